"""Independent oracles for the test suite.

Everything here avoids the library's own spectral machinery: eigenvalues
come from ODE monodromy (fixed-step RK4 or a matrix exponential for
constant coefficients) plus a characteristic determinant and a complex
secant iteration.  Agreement between these and the Galerkin results is
what the acceptance criteria lean on.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg


def _rhs_matrix(x, lam, P, Q):
    """y1' = -i lam y1 + i P(x) y2,  y2' = i lam y2 - i Q(x) y1."""
    return np.array([[-1j * lam, 1j * P(x)],
                     [-1j * Q(x), 1j * lam]], dtype=complex)


def monodromy(lam, P, Q, steps: int = 2000, lo: float = 0.0,
              hi: float = math.pi) -> np.ndarray:
    """Fundamental matrix U with y(hi) = U y(lo), fixed-step RK4."""
    h = (hi - lo) / steps
    U = np.eye(2, dtype=complex)
    x = lo
    for _ in range(steps):
        k1 = _rhs_matrix(x, lam, P, Q) @ U
        k2 = _rhs_matrix(x + h / 2, lam, P, Q) @ (U + h / 2 * k1)
        k3 = _rhs_matrix(x + h / 2, lam, P, Q) @ (U + h / 2 * k2)
        k4 = _rhs_matrix(x + h, lam, P, Q) @ (U + h * k3)
        U = U + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        x += h
    return U


def monodromy_const(lam, P, Q, lo: float = 0.0, hi: float = math.pi) -> np.ndarray:
    """Exact fundamental matrix for constant P, Q."""
    A = np.array([[-1j * lam, 1j * P], [-1j * Q, 1j * lam]], dtype=complex)
    return scipy.linalg.expm((hi - lo) * A)


def char_det(bc, U: np.ndarray) -> complex:
    """Determinant whose zeros (in lambda, through U) are the eigenvalues.

    With y(pi) = U y(0) the boundary rows become a 2x2 system in y(0)."""
    B = np.array([
        [1 + bc.b * U[0, 0], bc.a + bc.b * U[0, 1]],
        [bc.d * U[0, 0] + U[1, 0], bc.d * U[0, 1] + bc.c + U[1, 1]],
    ], dtype=complex)
    return complex(np.linalg.det(B))


def secant_root(f, z0, z1, tol: float = 1e-12, maxit: int = 60) -> complex:
    """Complex secant iteration; raises if it stalls."""
    f0, f1 = f(z0), f(z1)
    for _ in range(maxit):
        if f1 == f0:
            break
        z2 = z1 - f1 * (z1 - z0) / (f1 - f0)
        if abs(z2 - z1) < tol * (1 + abs(z2)):
            return z2
        z0, f0, z1, f1 = z1, f1, z2, f(z2)
    raise RuntimeError(f"secant iteration stalled near {z1}")


def dirac_eigen_oracle(bc, P, Q, seeds, steps: int = 2000,
                       const: bool = False) -> list[complex]:
    """Refine each seed to an eigenvalue of the canonical problem on
    [0, pi] by root-finding the monodromy characteristic determinant."""
    if const:
        f = lambda lam: char_det(bc, monodromy_const(lam, P, Q))
    else:
        f = lambda lam: char_det(bc, monodromy(lam, P, Q, steps=steps))
    out = []
    for s in seeds:
        out.append(secant_root(f, s, s + 1e-3 + 1e-3j))
    return out


def _weighted_rhs(x, lam, rho, T):
    """i J y' + T y = lam rho y  =>  y' = -i J^{-1} ... written out:
    y1' = -i (lam rho y1 - (T y)_1),  y2' = i (lam rho y2 - (T y)_2)."""
    r = rho(x)
    t11, t12 = T[0][0](x), T[0][1](x)
    t21, t22 = T[1][0](x), T[1][1](x)
    return np.array([[-1j * (lam * r - t11), 1j * t12],
                     [-1j * t21, 1j * (lam * r - t22)]], dtype=complex)


def weighted_monodromy(lam, rho, T, x1, x2, steps: int = 2000) -> np.ndarray:
    h = (x2 - x1) / steps
    U = np.eye(2, dtype=complex)
    x = x1
    for _ in range(steps):
        k1 = _weighted_rhs(x, lam, rho, T) @ U
        k2 = _weighted_rhs(x + h / 2, lam, rho, T) @ (U + h / 2 * k1)
        k3 = _weighted_rhs(x + h / 2, lam, rho, T) @ (U + h / 2 * k2)
        k4 = _weighted_rhs(x + h, lam, rho, T) @ (U + h * k3)
        U = U + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        x += h
    return U


def weighted_eigen_oracle(bc, rho, T, x1, x2, seeds,
                          steps: int = 2000) -> list[complex]:
    f = lambda lam: char_det(bc, weighted_monodromy(lam, rho, T, x1, x2, steps))
    return [secant_root(f, s, s + 1e-3 + 1e-3j) for s in seeds]
