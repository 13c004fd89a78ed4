"""Truncated operator matrices, spectra, and localization geometry.

The operator L = L0 + V acts on coefficient sequences in the basis Phi.
L0 is diagonal with entries k + tau_nu (plus a single nilpotent coupling
per lattice site in the degenerate case, where phi_k^2 is an associated
vector: L0 phi_k^2 = (tau* + k) phi_k^2 - i phi_k^1), and V has entries
w^{eta nu}(j + k).  Truncating to |k| <= M gives a dense complex
nonsymmetric matrix whose spectrum approximates the interior of the true
spectrum; the localization report checks the rectangle-plus-disks picture
that the eigenvalues are supposed to satisfy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .basis import SpectralBasis
from .bc import BcClass
from .potential import MatrixRep

__all__ = [
    "TruncatedOperator", "LocalizationReport",
    "index_pairs", "build_truncated", "spectrum", "eig_triples",
    "free_lattice", "disk_radius", "localize", "riesz_projection_diag",
    "resolvent_size", "resolvent_size_bound",
]


def index_pairs(M: int) -> list[tuple[int, int]]:
    """Row ordering (k, nu), k even in [-M, M], nu in {1, 2}."""
    if M % 2 != 0 or M < 0:
        raise ValueError("M must be a nonnegative even integer")
    return [(k, nu) for k in range(-M, M + 1, 2) for nu in (1, 2)]


@dataclass(frozen=True)
class TruncatedOperator:
    basis: SpectralBasis
    M: int
    pairs: tuple[tuple[int, int], ...]
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def row(self, k: int, nu: int) -> int:
        return self.pairs.index((k, nu))


def build_truncated(basis: SpectralBasis, rep: MatrixRep | None, M: int) -> TruncatedOperator:
    pairs = index_pairs(M)
    if rep is not None and rep.M_w < 2 * M:
        raise ValueError("matrix representation truncation must cover |j+k| <= 2M")
    n = len(pairs)
    A = np.zeros((n, n), dtype=complex)
    for i, (k, nu) in enumerate(pairs):
        A[i, i] = k + basis.tau(nu)
    if basis.degenerate:
        # phi_k^2 is an associated vector of the free operator
        for k in range(-M, M + 1, 2):
            i1 = pairs.index((k, 1))
            i2 = pairs.index((k, 2))
            A[i1, i2] += -1j
    if rep is not None:
        for i, (j, eta) in enumerate(pairs):
            for l, (k, nu) in enumerate(pairs):
                A[i, l] += rep.w_at(eta, nu, j + k)
    return TruncatedOperator(basis, M, tuple(pairs), A)


def spectrum(op: TruncatedOperator) -> np.ndarray:
    """Eigenvalues sorted by real part, then imaginary part."""
    w = scipy.linalg.eigvals(op.matrix)
    order = np.lexsort((w.imag, w.real))
    return w[order]


def eig_triples(op: TruncatedOperator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(eigenvalues, left vectors, right vectors), consistently sorted.

    Left vectors vl satisfy vl^H A = lambda vl^H column-wise.
    """
    w, vl, vr = scipy.linalg.eig(op.matrix, left=True, right=True)
    order = np.lexsort((w.imag, w.real))
    return w[order], vl[:, order], vr[:, order]


def free_lattice(basis: SpectralBasis, M: int) -> dict[tuple[int, int], complex]:
    return {(k, nu): k + basis.tau(nu) for (k, nu) in index_pairs(M)}


def disk_radius(basis: SpectralBasis) -> float:
    """Half the safety distance between neighboring free eigenvalues."""
    if basis.cls.tag is BcClass.STRICTLY_REGULAR:
        t1, t2 = basis.params.tau1, basis.params.tau2
        return 0.5 * min(1.0 - abs((t1 - t2).real) / 2.0, abs(t1 - t2) / 2.0)
    return 0.25


@dataclass(frozen=True)
class LocalizationReport:
    N: int
    T: float
    rho: float
    center: float                       # Re of the lattice midpoint
    strictly_regular: bool
    assignments: tuple[dict, ...]       # one per eigenvalue
    rect_count: int
    disk_counts: dict
    violations: tuple[complex, ...]
    excluded: tuple[complex, ...]

    @property
    def ok(self) -> bool:
        if self.violations:
            return False
        if self.rect_count != 2 * self.N + 2:
            return False
        want = 1 if self.strictly_regular else 2
        return all(c == want for c in self.disk_counts.values())


def localize(basis: SpectralBasis, eigs: np.ndarray, v_norm: float,
             N: int, T: float, M: int | None = None) -> LocalizationReport:
    """Assign eigenvalues to the rectangle R_NT or to lattice disks.

    Eigenvalues near the truncation edge (|Re| > M - max(8, M/8)) are
    excluded: the matrix truncation corrupts them and the localization
    claim is about the full operator.
    """
    if N % 2 != 0 or N < 0:
        raise ValueError("N must be a nonnegative even integer")
    p = basis.params
    sr = basis.cls.tag is BcClass.STRICTLY_REGULAR
    rho = disk_radius(basis)
    x0 = ((p.tau1 + p.tau2) / 2.0).real if sr else p.tau_star.real
    taus = [(1, p.tau1), (2, p.tau2)] if sr else [(0, p.tau_star)]

    margin = max(8.0, (M or 0) / 8.0) if M is not None else None
    assignments = []
    violations = []
    excluded = []
    rect_count = 0
    disk_counts: dict = {}
    for lam in np.asarray(eigs, dtype=complex):
        if margin is not None and abs(lam.real) > M - margin:
            excluded.append(lam)
            assignments.append({"lambda": lam, "region": "edge"})
            continue
        if abs(lam.real - x0) < N + 1 and abs(lam.imag) < T:
            rect_count += 1
            assignments.append({"lambda": lam, "region": "rectangle"})
            continue
        # nearest lattice disk: center tau_mu + m, m even, |m| > N
        best = None
        for mu, tau in taus:
            m = 2 * round((lam.real - tau.real) / 2.0)
            for mm in (m - 2, m, m + 2):
                d = abs(lam - tau - mm)
                key = (mm, mu)
                if d < rho and abs(mm) > N:
                    if best is None or d < best[0] or (
                            d == best[0] and (abs(mm), mu) < (abs(best[1][0]), best[1][1])):
                        best = (d, key)
        if best is None:
            violations.append(lam)
            assignments.append({"lambda": lam, "region": "violation"})
        else:
            disk_counts[best[1]] = disk_counts.get(best[1], 0) + 1
            assignments.append({"lambda": lam, "region": "disk",
                                "m": best[1][0], "mu": best[1][1]})
    return LocalizationReport(N, float(T), rho, x0, sr,
                              tuple(assignments), rect_count, disk_counts,
                              tuple(violations), tuple(excluded))


def riesz_projection_diag(basis: SpectralBasis, op: TruncatedOperator,
                          eigs: np.ndarray, n: int, N: int = 0) -> float:
    """Gap between the perturbed and free two-dimensional spectral subspaces
    at lattice site n, measured by the largest principal angle (its sine).

    The free subspace is spanned by the coordinate vectors of (n, 1) and
    (n, 2); the perturbed one by the Galerkin right eigenvectors whose
    eigenvalues fall in the site-n disk(s).
    """
    if n % 2 != 0:
        raise ValueError("site index must be even")
    if abs(n) <= N:
        raise ValueError("disk not resolved: site inside the central rectangle")
    if abs(n) > op.M:
        raise ValueError("site outside the truncation window")
    p = basis.params
    sr = basis.cls.tag is BcClass.STRICTLY_REGULAR
    rho = disk_radius(basis)
    centers = [n + p.tau1, n + p.tau2] if sr else [n + p.tau_star]
    w, _, vr = eig_triples(op)
    sel = np.zeros(len(w), dtype=bool)
    for c in centers:
        sel |= np.abs(w - c) < rho
    if int(sel.sum()) != 2:
        raise ValueError(f"disk not resolved: found {int(sel.sum())} eigenvalues at site {n}")
    U = vr[:, sel]
    F = np.zeros((op.dim, 2), dtype=complex)
    F[op.row(n, 1), 0] = 1.0
    F[op.row(n, 2), 1] = 1.0
    angles = scipy.linalg.subspace_angles(U, F)
    return float(np.sin(np.max(angles)))


def resolvent_size(lam: complex, K: int = 10 ** 6) -> float:
    """Truncated sum over the even lattice of |lambda - k|^{-2}."""
    total = 0.0
    chunk = 1 << 18
    for start in range(-K, K + 1, 2 * chunk):
        ks = np.arange(start, min(start + 2 * chunk, K + 2), 2, dtype=float)
        total += float(np.sum(1.0 / np.abs(lam - ks) ** 2))
    return total


def resolvent_size_bound(xi: float, t: float) -> float:
    """Closed-form envelope for resolvent_size at lambda = m + xi + it,
    m even, |xi| < 1."""
    if abs(xi) >= 1:
        raise ValueError("offset must satisfy |xi| < 1")
    return 1.0 / (xi * xi + t * t) + 8.0 / (1.0 + 2.0 * abs(t))
