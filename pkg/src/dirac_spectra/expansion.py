"""Spectral partial sums, equiconvergence deficits, point-wise limits.

Two partial-sum operators live here.  The free sum S_M^0 truncates the
expansion in the explicit basis Phi symmetrically over |m| <= M.  The
perturbed sum S_N uses the truncated (Galerkin) matrix of L = L0 + V:
it projects onto the invariant subspace spanned by the eigenvalues that
fall in the central rectangle of the localization picture, built from
groupwise-biorthogonalized left/right eigenvectors (the operator is not
normal, so a plain eigenvector sum would be wrong).

The point-wise limit of the free sums is the half-sum of one-sided
values in the interior and, at the endpoints, one half of a fixed 4x4
transition matrix applied to the boundary vector
(f(0), f(pi), g(0), g(pi)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .basis import SpectralBasis, VectorFunction, expand
from .bc import BcClass, BoundaryCondition, NotRegularError, classify_bc
from .galerkin import TruncatedOperator, eig_triples

__all__ = [
    "ExpansionReport", "PointwiseReport",
    "free_partial_sum", "perturbed_partial_sum", "equiconv_deficit",
    "transition_matrix", "endpoint_limits", "pointwise_limit",
    "verify_pointwise", "coefficient_vector", "rectangle_height",
]


def coefficient_vector(basis: SpectralBasis, F: VectorFunction, M: int,
                       nodes: int = 4096) -> np.ndarray:
    """Coefficients of F against the biorthogonal system, in the row
    ordering of the truncated operator ((k, nu), k ascending, nu inner)."""
    co = expand(basis, F, M, nodes=nodes)
    return np.array([co[(k, nu)]
                     for k in range(-M, M + 1, 2) for nu in (1, 2)])


def _eval_sum(basis: SpectralBasis, coeffs: np.ndarray, M: int, x) -> np.ndarray:
    """Evaluate sum of coeffs[(k,nu)] * phi_k^nu at x, vectorized over x."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros((2, x.size), dtype=complex)
    ks = np.arange(-M, M + 1, 2)
    c = coeffs.reshape(len(ks), 2)
    for nu in (1, 2):
        c1, c2 = basis._phi_coef(nu, x)
        e = np.exp(-1j * np.outer(ks.astype(float), x))
        out[0] += c1 * (c[:, nu - 1] @ e)
        out[1] += c2 * (c[:, nu - 1] @ np.conj(e))
    return out


def free_partial_sum(basis: SpectralBasis, F: VectorFunction, M: int, x,
                     nodes: int = 4096, method: str = "coeff") -> np.ndarray:
    """Symmetric partial sum over |m| <= M of the expansion of F in Phi.

    method="coeff" sums coefficients times basis functions; method
    "conjugate" forms the plain Fourier partial sums of the components of
    A^{-1}F and maps them through A point-wise.  The two agree to
    quadrature accuracy and serve as mutual checks.
    """
    if M % 2 != 0 or M < 0:
        raise ValueError("M must be a nonnegative even integer")
    if method == "coeff":
        coeffs = coefficient_vector(basis, F, M, nodes=nodes)
        return _eval_sum(basis, coeffs, M, x)
    if method == "conjugate":
        u = basis.apply_A_inv(F)
        co = expand(basis, F, M, nodes=nodes)
        ks = np.arange(-M, M + 1, 2)
        c1 = np.array([co[(int(k), 1)] for k in ks])
        c2 = np.array([co[(int(k), 2)] for k in ks])

        def s1(t):
            return c1 @ np.exp(1j * np.outer(ks.astype(float), np.asarray(t, dtype=float)))

        def s2(t):
            return c2 @ np.exp(1j * np.outer(ks.astype(float), np.asarray(t, dtype=float)))

        S = basis.apply_A(VectorFunction(s1, s2))
        return S(np.atleast_1d(np.asarray(x, dtype=float)))
    raise ValueError(f"unknown partial-sum method {method!r}")


def rectangle_height(basis: SpectralBasis, v_norm: float = 0.0) -> float:
    """A rectangle half-height that clears the free lattice comfortably."""
    p = basis.params
    return 1.0 + 2.0 * abs(p.tau1) + 2.0 * abs(p.tau2) + v_norm


def perturbed_partial_sum(basis: SpectralBasis, op: TruncatedOperator,
                          F: VectorFunction, N: int, x,
                          T: float | None = None, nodes: int = 4096) -> np.ndarray:
    """Spectral component of F over the 2N+2 eigenvalues in the central
    rectangle, via the groupwise spectral projection of the truncated matrix.
    """
    if N % 2 != 0 or N < 0:
        raise ValueError("N must be a nonnegative even integer")
    if N > op.M - 2:
        raise ValueError("rectangle exceeds the truncation window")
    if T is None:
        T = rectangle_height(basis, float(np.linalg.norm(op.matrix - np.diag(np.diag(op.matrix)), 2)))
    p = basis.params
    sr = basis.cls.tag is BcClass.STRICTLY_REGULAR
    x0 = ((p.tau1 + p.tau2) / 2.0).real if sr else p.tau_star.real
    w, vl, vr = eig_triples(op)
    sel = (np.abs(w.real - x0) < N + 1) & (np.abs(w.imag) < T)
    if int(sel.sum()) != 2 * N + 2:
        raise ValueError(
            f"unresolved localization: rectangle holds {int(sel.sum())} "
            f"eigenvalues, expected {2 * N + 2}")
    U = vr[:, sel]
    W = vl[:, sel]
    G = W.conj().T @ U
    f = coefficient_vector(basis, F, op.M, nodes=nodes)
    proj = U @ np.linalg.solve(G, W.conj().T @ f)
    return _eval_sum(basis, proj, op.M, x)


@dataclass(frozen=True)
class ExpansionReport:
    Ns: tuple[int, ...]
    deficits: tuple[float, ...]
    grid: np.ndarray

    @property
    def passed(self) -> bool:
        d = self.deficits
        if d[0] == 0.0:
            return all(t < 1e-12 for t in d)
        tail_decreasing = all(d[i + 1] <= d[i] + 1e-9 for i in range(len(d) - 3, len(d) - 1))
        return d[-1] < d[0] / 4.0 and tail_decreasing


def equiconv_deficit(basis: SpectralBasis, op: TruncatedOperator,
                     F: VectorFunction, N_schedule, grid,
                     nodes: int = 4096) -> ExpansionReport:
    """d(N) = max over the grid of |S_N F - S_N^0 F| for each N in the
    schedule; the free sum uses the same symmetric cutoff."""
    grid = np.asarray(grid, dtype=float)
    deficits = []
    for N in N_schedule:
        s = perturbed_partial_sum(basis, op, F, int(N), grid, nodes=nodes)
        s0 = free_partial_sum(basis, F, int(N), grid, nodes=nodes)
        deficits.append(float(np.max(np.abs(s - s0))))
    return ExpansionReport(tuple(int(n) for n in N_schedule), tuple(deficits), grid)


def transition_matrix(bc: BoundaryCondition, tol: float = 1e-10) -> np.ndarray:
    """4x4 matrix over (f(0), f(pi), g(0), g(pi)); one half of it applied
    to the boundary vector gives the endpoint limits of the free sums."""
    if classify_bc(bc, tol).tag is BcClass.NOT_REGULAR:
        raise NotRegularError("transition matrix undefined for non-regular bc")
    a, b, c, d = bc.a, bc.b, bc.c, bc.d
    delta = b * c - a * d
    return np.array([
        [1.0, -b, -a, 0.0],
        [-c / delta, 1.0, 0.0, a / delta],
        [d / delta, 0.0, 1.0, -b / delta],
        [0.0, -d, -c, 1.0],
    ], dtype=complex)


def endpoint_limits(bc: BoundaryCondition, bvec) -> tuple[np.ndarray, np.ndarray]:
    """(limit at 0, limit at pi), each a 2-vector, from the boundary vector
    bvec = (f(0), f(pi), g(0), g(pi))."""
    m = transition_matrix(bc)
    half = 0.5 * (m @ np.asarray(bvec, dtype=complex))
    at0 = np.array([half[0], half[2]])
    atpi = np.array([half[1], half[3]])
    return at0, atpi


def pointwise_limit(bc: BoundaryCondition, F: VectorFunction, x: float) -> np.ndarray:
    """Predicted limit of the free partial sums at x: the half-sum of
    one-sided values in the interior, the transition-matrix value at 0, pi."""
    if x < -1e-12 or x > math.pi + 1e-12:
        raise ValueError("evaluation point outside [0, pi]")
    if x < 1e-12 or x > math.pi - 1e-12:
        f0 = F.one_sided(0.0)[1]
        fpi = F.one_sided(math.pi)[0]
        bvec = (f0[0], fpi[0], f0[1], fpi[1])
        at0, atpi = endpoint_limits(bc, bvec)
        return at0 if x < 1e-12 else atpi
    left, right = F.one_sided(x)
    return 0.5 * (left + right)


@dataclass(frozen=True)
class PointwiseReport:
    x_set: tuple[float, ...]
    M_schedule: tuple[int, ...]
    errors: np.ndarray          # shape (len(x_set), len(M_schedule))
    limits: np.ndarray          # shape (len(x_set), 2)
    uniform_errors: tuple[float, ...]

    @property
    def decreasing(self) -> np.ndarray:
        return np.array([all(e[i + 1] <= e[i] * 1.05 + 1e-12
                             for i in range(len(e) - 1)) for e in self.errors])


def verify_pointwise(basis: SpectralBasis, F: VectorFunction, x_set,
                     M_schedule, nodes: int = 4096,
                     grid_n: int = 257) -> PointwiseReport:
    """Compare free partial sums against the predicted limits over an M
    schedule, plus a sup-grid check that skips 4pi/M neighborhoods of the
    (reflected) jump locations where overshoot is expected."""
    x_set = tuple(float(t) for t in x_set)
    Ms = tuple(int(m) for m in M_schedule)
    limits = np.array([pointwise_limit(basis.bc, F, t) for t in x_set])
    errors = np.zeros((len(x_set), len(Ms)))
    uniform = []
    grid = np.linspace(0.0, math.pi, grid_n)
    bad = set()
    for j in F.jumps:
        bad.add(j.x)
        bad.add(math.pi - j.x)
    bad |= {0.0, math.pi}
    glimits = np.array([pointwise_limit(basis.bc, F, t) for t in grid])
    for mi, M in enumerate(Ms):
        s = free_partial_sum(basis, F, M, np.array(x_set), nodes=nodes)
        errors[:, mi] = np.max(np.abs(s.T - limits), axis=1)
        delta = 4.0 * math.pi / M
        keep = np.array([all(abs(t - b) > delta for b in bad) for t in grid])
        if not keep.any():
            uniform.append(float("nan"))
            continue
        sg = free_partial_sum(basis, F, M, grid[keep], nodes=nodes)
        uniform.append(float(np.max(np.abs(sg.T - glimits[keep]))))
    return PointwiseReport(x_set, Ms, errors, limits, tuple(uniform))
