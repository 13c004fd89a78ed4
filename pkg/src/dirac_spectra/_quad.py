"""Jump-aware composite Gauss-Legendre quadrature on [0, pi].

Integrands here are products of smooth exponentials with possibly
discontinuous test functions.  Splitting at declared jump locations and
using fixed-order Gauss-Legendre panels on each smooth piece gives
near machine accuracy for trigonometric polynomials while staying
robust for BV data.
"""

from __future__ import annotations

import math

import numpy as np

PANEL_ORDER = 16

_gl_nodes, _gl_weights = np.polynomial.legendre.leggauss(PANEL_ORDER)


def quad_nodes(nodes: int, jumps: tuple[float, ...] = (),
               lo: float = 0.0, hi: float = math.pi) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes/weights on [lo, hi] with the budget `nodes`.

    The interval is split at interior jump points; each smooth segment is
    covered by Gauss-Legendre panels of order PANEL_ORDER so that the
    total number of nodes is roughly `nodes`.
    """
    if nodes < 2:
        raise ValueError("nodes must be >= 2")
    pts = sorted({lo, hi, *(float(j) for j in jumps if lo < j < hi)})
    total = hi - lo
    xs = []
    ws = []
    n_panels_total = max(1, nodes // PANEL_ORDER)
    for a, b in zip(pts[:-1], pts[1:]):
        seg = b - a
        if seg <= 0:
            continue
        n_panels = max(1, int(round(n_panels_total * seg / total)))
        edges = np.linspace(a, b, n_panels + 1)
        for p0, p1 in zip(edges[:-1], edges[1:]):
            h = 0.5 * (p1 - p0)
            xs.append(p0 + h * (_gl_nodes + 1.0))
            ws.append(h * _gl_weights)
    return np.concatenate(xs), np.concatenate(ws)


def integrate(fvals: np.ndarray, weights: np.ndarray) -> complex:
    return complex(np.sum(fvals * weights))


def fourier_coefficients(f, ks, nodes: int = 4096,
                         jumps: tuple[float, ...] = ()) -> np.ndarray:
    """c_k = (1/pi) int_0^pi f(x) e^{-ikx} dx for the given integer ks.

    Evaluates f once on the panel grid and contracts against the
    exponential matrix; this stays exact (to quadrature accuracy) for
    piecewise-smooth f, unlike an FFT on a uniform grid.
    """
    ks = np.asarray(ks)
    x, w = quad_nodes(nodes, jumps)
    fv = np.asarray(f(x), dtype=complex)
    ph = np.exp(-1j * np.outer(ks.astype(float), x))
    return (ph @ (fv * w)) / math.pi
