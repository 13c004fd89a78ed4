"""Discrete Hilbert transform on the even lattice, weighted-space checks,
and multiplication by C^1 functions on the Fourier-coefficient side.

Sequences live on 2Z and the kernel uses the actual even-integer
differences n - k (renumbering to consecutive integers would silently
halve the kernel).  A weight sequence Omega is admissible when the
discrete Muckenhoupt-type product

    sup_{k,n} [ (1/(n+1)) sum_{m=k}^{k+n} Omega^2(m) ]
            * [ (1/(n+1)) sum_{m=k}^{k+n} Omega^(-2)(m) ]

is finite; power weights (1+|k|)^alpha qualify exactly for alpha < 1/2,
and log weights for every exponent.

Multiplying f by a C^1 function g acts on coefficients as convolution;
the non-periodic part of g (the linear ramp m*x) contributes the kernel
c with c(0) = pi/2 and c(k) = i/k, i.e. a Hilbert-transform term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .potential import fourier_coeffs

__all__ = [
    "WeightSeq", "hilbert", "weighted_norm", "muckenhoupt_sup",
    "muckenhoupt_running", "multiply_in_weighted_space",
]


def hilbert(ks, xi) -> np.ndarray:
    """(H xi)_n = sum_{k != n} xi_k / (n - k) over the given even lattice."""
    ks = np.asarray(ks, dtype=int)
    xi = np.asarray(xi, dtype=complex)
    if np.any(ks % 2 != 0):
        raise ValueError("lattice points must be even")
    diff = ks[:, None].astype(float) - ks[None, :].astype(float)
    with np.errstate(divide="ignore"):
        kern = np.where(diff == 0.0, 0.0, 1.0 / np.where(diff == 0.0, 1.0, diff))
    return kern @ xi


@dataclass(frozen=True)
class WeightSeq:
    kind: str                   # "sobolev" | "log" | "custom"
    param: float = 0.0
    evaluator: object = None    # used when kind == "custom"

    def __call__(self, k) -> np.ndarray:
        k = np.abs(np.asarray(k, dtype=float))
        if self.kind == "sobolev":
            return (1.0 + k) ** self.param
        if self.kind == "log":
            return np.log(math.e + k) ** self.param
        if self.kind == "custom":
            return np.asarray(self.evaluator(k), dtype=float)
        raise ValueError(f"unknown weight kind {self.kind!r}")

    @staticmethod
    def from_json(obj) -> "WeightSeq":
        kind = obj["kind"]
        if kind == "sobolev":
            return WeightSeq("sobolev", float(obj["alpha"]))
        if kind == "log":
            return WeightSeq("log", float(obj["delta"]))
        raise ValueError(f"unknown weight kind {kind!r}")

    def axioms_report(self, k_max: int = 1000) -> dict:
        """Finite-range check of symmetry, monotonicity, doubling and
        square-root growth; constants are fitted, not certified."""
        ks = np.arange(0, k_max + 1)
        w = self(ks)
        mono = bool(np.all(np.diff(w) >= -1e-12))
        doubling = float(np.max(self(2 * ks) / w))
        growth = float(np.max(w / np.sqrt(1.0 + ks)))
        return {"omega0_ge_1": bool(w[0] >= 1.0), "symmetric": True,
                "nondecreasing": mono, "doubling_C": doubling,
                "growth_C": growth}


def weighted_norm(ks, xi, omega: WeightSeq) -> float:
    ks = np.asarray(ks)
    xi = np.asarray(xi, dtype=complex)
    return float(np.sqrt(np.sum(np.abs(xi) ** 2 * omega(ks) ** 2)))


def _mw_product(omega: WeightSeq, k: int, n: int) -> float:
    ms = np.arange(k, k + n + 1)
    w2 = omega(ms) ** 2
    return float(np.sum(w2) * np.sum(1.0 / w2)) / (n + 1) ** 2


def muckenhoupt_sup(omega: WeightSeq, k_range, n_range) -> float:
    """Max over the given finite ranges of the Muckenhoupt-type product."""
    return max(_mw_product(omega, int(k), int(n))
               for n in n_range for k in k_range)


def muckenhoupt_running(omega: WeightSeq, n_values) -> list[float]:
    """Running sup over growing windows (k swept within +-2n); admissible
    weights stabilize, inadmissible ones keep growing."""
    out = []
    cur = 0.0
    for n in n_values:
        n = int(n)
        ks = np.unique(np.linspace(-2 * n, n, 41).astype(int))
        cur = max(cur, max(_mw_product(omega, int(k), n) for k in ks))
        out.append(cur)
    return out


def multiply_in_weighted_space(ks, fhat, g, omega: WeightSeq,
                               K_g: int = 64, nodes: int | None = None) -> dict:
    """Coefficient table of f*g from the table of f and a C^1 function g.

    g splits into a linear ramp m*x (m = (g(pi)-g(0))/pi) plus a periodic
    remainder g1.  The remainder acts by ordinary convolution with its
    coefficients; the ramp acts by the kernel c (c(0) = pi/2, c(k) = i/k),
    applied literally: (c * fhat)(k) = (pi/2) fhat(k) + i (H fhat)(k).
    """
    ks = np.asarray(ks, dtype=int)
    fhat = np.asarray(fhat, dtype=complex)
    if nodes is None:
        nodes = max(4096, 8 * K_g)
    gv0 = complex(np.asarray(g(np.array([0.0])))[0])
    gvpi = complex(np.asarray(g(np.array([math.pi])))[0])
    m = (gvpi - gv0) / math.pi

    def g1(x):
        return np.asarray(g(x), dtype=complex) - m * np.asarray(x, dtype=float)

    g1hat = fourier_coeffs(g1, K_g, nodes=nodes)
    K_out = int(np.max(np.abs(ks))) + K_g
    ks_out = np.arange(-K_out, K_out + 1, 2)
    out = np.zeros(ks_out.size, dtype=complex)
    # periodic part: plain convolution
    for j, kj in enumerate(ks):
        for q, cq in g1hat.items():
            out[(kj + q + K_out) // 2] += cq * fhat[j]
    # ramp part: c * fhat on the output lattice
    f_full = np.zeros(ks_out.size, dtype=complex)
    for j, kj in enumerate(ks):
        f_full[(kj + K_out) // 2] = fhat[j]
    ramp = (math.pi / 2.0) * f_full + 1j * hilbert(ks_out, f_full)
    out += m * ramp
    return {
        "ks": ks_out,
        "coeffs": out,
        "norm_in": weighted_norm(ks, fhat, omega),
        "norm_out": weighted_norm(ks_out, out, omega),
    }
