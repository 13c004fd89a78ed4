"""Figure rendering for the CLI report path.

Only the command-line front end imports this module; the numerical core
has no plotting dependency.  All figures go straight to files via the
Agg backend.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def plot_basis(path, x, samples):
    """samples: list of (label, values) for the first component."""
    fig, ax = plt.subplots(figsize=(7, 4))
    for label, vals in samples:
        ax.plot(x, np.real(vals), label=f"Re {label}", lw=1.0)
        ax.plot(x, np.imag(vals), label=f"Im {label}", lw=1.0, ls="--")
    ax.set_xlabel("x")
    ax.legend(fontsize=7, ncol=2)
    ax.set_title("basis samples (first component)")
    _save(fig, path)


def plot_spectrum(path, eigs, regions, centers, rho, rect=None):
    fig, ax = plt.subplots(figsize=(7, 4))
    eigs = np.asarray(eigs, dtype=complex)
    colors = {"rectangle": "tab:blue", "disk": "tab:green",
              "edge": "0.7", "violation": "tab:red"}
    for reg in colors:
        sel = [i for i, r in enumerate(regions) if r == reg]
        if sel:
            ax.plot(eigs[sel].real, eigs[sel].imag, ".",
                    color=colors[reg], label=reg, ms=5)
    th = np.linspace(0, 2 * np.pi, 60)
    for c in centers:
        ax.plot(c.real + rho * np.cos(th), c.imag + rho * np.sin(th),
                color="0.8", lw=0.6)
    if rect is not None:
        x0, N, T = rect
        ax.plot([x0 - N - 1, x0 + N + 1, x0 + N + 1, x0 - N - 1, x0 - N - 1],
                [-T, -T, T, T, -T], color="0.5", lw=0.8)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.legend(fontsize=7)
    ax.set_title("truncated-operator spectrum")
    _save(fig, path)


def plot_expand(path, x_set, Ms, errors):
    fig, ax = plt.subplots(figsize=(6, 4))
    for i, x in enumerate(x_set):
        ax.semilogy(Ms, errors[i], "o-", label=f"x = {x:.3f}", lw=1.0)
    ax.set_xlabel("M")
    ax.set_ylabel("|partial sum - limit|")
    ax.legend(fontsize=7)
    ax.set_title("point-wise convergence")
    _save(fig, path)


def plot_deficit(path, Ns, ds):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(Ns, ds, "o-")
    ax.set_xlabel("N")
    ax.set_ylabel("sup |S_N - S_N^0|")
    ax.set_title("equiconvergence deficit")
    _save(fig, path)


def plot_sa_spectrum(path, eigs, tau, h):
    fig, ax = plt.subplots(figsize=(7, 3.5))
    eigs = np.asarray(eigs, dtype=float)
    n = np.round(eigs / h - tau)
    ax.plot(eigs, eigs - (tau + n) * h, "o", ms=4)
    ax.axhline(h / 4, color="0.6", lw=0.8)
    ax.axhline(-h / 4, color="0.6", lw=0.8)
    ax.set_xlabel("eigenvalue")
    ax.set_ylabel("offset from lattice")
    ax.set_title("self-adjoint spectrum against quarter-width intervals")
    _save(fig, path)


def plot_sequence(path, ks, values, label):
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ks, np.real(values), "o-", ms=3, lw=0.8, label=f"Re {label}")
    ax.plot(ks, np.imag(values), "s--", ms=3, lw=0.8, label=f"Im {label}")
    ax.set_xlabel("k")
    ax.legend(fontsize=8)
    _save(fig, path)
