"""Boundary conditions in normal form and their spectral parameters.

A boundary condition for the 2x2 Dirac system on [0, pi] is given by the
two equations

    y1(0) + b*y1(pi) + a*y2(0) = 0,
    d*y1(pi) + c*y2(0) + y2(pi) = 0,

i.e. by four complex coefficients (a, b, c, d).  Everything downstream
(bases, Galerkin matrices, expansions) is driven by the roots z1, z2 of
the characteristic polynomial

    z^2 + (b+c) z + (bc - ad) = 0,

their logarithms tau (z = exp(i*pi*tau)), and a pair of eigenvectors of
the 2x2 matrix [[b, a], [d, c]].
"""

from __future__ import annotations

import cmath
import enum
import json
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "BoundaryCondition",
    "BcClass",
    "SpectralParams",
    "classify_bc",
    "char_roots",
    "tau_from_root",
    "spectral_params",
    "NotRegularError",
]


class NotRegularError(ValueError):
    """Raised when an operation requires a regular boundary condition."""


class BcClass(enum.Enum):
    NOT_REGULAR = "NotRegular"
    STRICTLY_REGULAR = "StrictlyRegular"
    PERIODIC_TYPE = "PeriodicType"
    REGULAR_DEGENERATE = "RegularDegenerate"


@dataclass(frozen=True)
class BoundaryCondition:
    """Coefficients (a, b, c, d) of the normal form."""

    a: complex
    b: complex
    c: complex
    d: complex

    def regularity(self) -> complex:
        """bc - ad; the condition is regular iff this is nonzero."""
        return self.b * self.c - self.a * self.d

    def discriminant(self) -> complex:
        """(b-c)^2 + 4ad; zero iff the characteristic roots coincide."""
        return (self.b - self.c) ** 2 + 4.0 * self.a * self.d

    def scale(self) -> float:
        """Natural size of degree-2 coefficient combinations."""
        m = max(1.0, abs(self.a), abs(self.b), abs(self.c), abs(self.d))
        return m * m

    def to_json(self) -> str:
        return json.dumps(
            {
                "a": [self.a.real, self.a.imag],
                "b": [self.b.real, self.b.imag],
                "c": [self.c.real, self.c.imag],
                "d": [self.d.real, self.d.imag],
            }
        )

    @staticmethod
    def from_dict(obj: dict) -> "BoundaryCondition":
        def _c(v) -> complex:
            if isinstance(v, (int, float)):
                return complex(v)
            re, im = v
            return complex(re, im)

        return BoundaryCondition(_c(obj["a"]), _c(obj["b"]), _c(obj["c"]), _c(obj["d"]))

    @staticmethod
    def from_json(text: str) -> "BoundaryCondition":
        return BoundaryCondition.from_dict(json.loads(text))


# Canonical examples used all over the test-suite and docs.
PERIODIC_PLUS = BoundaryCondition(0.0, -1.0, -1.0, 0.0)
ANTIPERIODIC = BoundaryCondition(0.0, 1.0, 1.0, 0.0)


@dataclass(frozen=True)
class ClassifiedBc:
    tag: BcClass
    near_degenerate: bool = False


def classify_bc(bc: BoundaryCondition, tol: float = 1e-10) -> ClassifiedBc:
    """Classify a boundary condition.

    `tol` is relative to max(1, |a|, |b|, |c|, |d|)^2 since the quantities
    compared against zero are degree-2 polynomials in the coefficients.
    Near-degenerate inputs (discriminant below tol but nonzero) classify
    as strictly regular with a conditioning warning flag.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    eps = tol * bc.scale()
    if abs(bc.regularity()) <= eps:
        return ClassifiedBc(BcClass.NOT_REGULAR)
    disc = bc.discriminant()
    if abs(disc) > eps:
        return ClassifiedBc(BcClass.STRICTLY_REGULAR, near_degenerate=False)
    if abs(bc.b - bc.c) <= eps and abs(bc.a) <= eps and abs(bc.d) <= eps:
        return ClassifiedBc(BcClass.PERIODIC_TYPE)
    if disc != 0:
        # The dichotomy of the underlying theory is exact; below tol but
        # nonzero we keep the strictly-regular branch and surface conditioning.
        return ClassifiedBc(BcClass.STRICTLY_REGULAR, near_degenerate=True)
    return ClassifiedBc(BcClass.REGULAR_DEGENERATE)


def char_roots(bc: BoundaryCondition, tol: float = 1e-10) -> tuple[complex, complex]:
    """Roots of z^2 + (b+c) z + (bc-ad) = 0.

    For a double root (degenerate and periodic-type cases) returns
    z1 == z2 == -(b+c)/2 exactly.
    """
    cls = classify_bc(bc, tol)
    if cls.tag is BcClass.NOT_REGULAR:
        raise NotRegularError("characteristic roots undefined for non-regular bc")
    p = bc.b + bc.c
    q = bc.regularity()
    if cls.tag in (BcClass.PERIODIC_TYPE, BcClass.REGULAR_DEGENERATE):
        z = -p / 2.0
        return z, z
    # Numerically stable quadratic: avoid cancellation in the small root.
    s = cmath.sqrt(p * p - 4.0 * q)
    if abs(-p + s) >= abs(-p - s):
        z1 = (-p + s) / 2.0
    else:
        z1 = (-p - s) / 2.0
    z2 = q / z1
    return z1, z2


def tau_from_root(z: complex, branch_hint: float | None = None) -> complex:
    """tau with exp(i*pi*tau) = z, principal determination Re tau in (-1, 1].

    `branch_hint`, when given, shifts tau by an even integer so that
    |Re tau - branch_hint| <= 1 (used to pair the two roots).
    """
    if z == 0:
        raise ValueError("tau undefined for z = 0")
    tau = cmath.log(z) / (1j * cmath.pi)
    # cmath.log puts Im(log z) in (-pi, pi], hence Re tau in (-1, 1].
    if branch_hint is not None:
        while tau.real - branch_hint > 1.0:
            tau -= 2.0
        while tau.real - branch_hint < -1.0:
            tau += 2.0
    return tau


def _tau_pair(z1: complex, z2: complex) -> tuple[complex, complex]:
    t1 = tau_from_root(z1)
    t2 = tau_from_root(z2)
    if abs(t1.real - t2.real) > 1.0:
        if t1.real > t2.real:
            t1 -= 2.0
        else:
            t2 -= 2.0
    return t1, t2


def _normalize_eigvec(v: np.ndarray) -> np.ndarray:
    """Scale so the largest-magnitude entry is exactly 1 (argument 0)."""
    i = int(np.argmax(np.abs(v)))
    return v / v[i]


@dataclass(frozen=True)
class SpectralParams:
    z1: complex
    z2: complex
    tau1: complex
    tau2: complex
    alpha: tuple[complex, complex]
    beta: tuple[complex, complex]
    alpha_prime: tuple[complex, complex] | None = None
    beta_prime: tuple[complex, complex] | None = None
    delta: complex | None = None
    near_degenerate: bool = field(default=False, compare=False)

    @property
    def tau_star(self) -> complex:
        return self.tau1


def spectral_params(bc: BoundaryCondition, cls: ClassifiedBc | None = None,
                    tol: float = 1e-10) -> SpectralParams:
    """Roots, tau branch pair and eigenvector data for a regular bc."""
    if cls is None:
        cls = classify_bc(bc, tol)
    if cls.tag is BcClass.NOT_REGULAR:
        raise NotRegularError("spectral parameters undefined for non-regular bc")

    z1, z2 = char_roots(bc, tol)

    if cls.tag is BcClass.PERIODIC_TYPE:
        # Any two independent vectors are eigenvectors; fix the identity choice.
        t = tau_from_root(z1)
        return SpectralParams(
            z1, z2, t, t,
            alpha=(1.0 + 0j, 0j), beta=(0j, 1.0 + 0j),
            alpha_prime=(1.0 + 0j, 0j), beta_prime=(0j, 1.0 + 0j),
        )

    if cls.tag is BcClass.REGULAR_DEGENERATE:
        t = tau_from_root(z1)
        a, b, c, d = bc.a, bc.b, bc.c, bc.d
        eps = tol * bc.scale()
        if abs(a) <= eps:
            alpha = (0j, d)
            beta = (cmath.pi * b, 0j)
        else:
            alpha = (a, (c - b) / 2.0)
            beta = (0j, cmath.pi * b)
        delta = alpha[0] * beta[1] - alpha[1] * beta[0] + cmath.pi * alpha[0] * alpha[1]
        if delta == 0:
            raise NotRegularError("degenerate eigenvector prescription gives delta = 0")
        return SpectralParams(z1, z2, t, t, alpha=alpha, beta=beta, delta=delta)

    # Strictly regular: eigenvectors of [[b, a], [d, c]] for -z1, -z2.
    t1, t2 = _tau_pair(z1, z2)
    m = np.array([[bc.b, bc.a], [bc.d, bc.c]], dtype=complex)

    def eigvec(z: complex) -> np.ndarray:
        # (b + z) v1 + a v2 = 0  and  d v1 + (c + z) v2 = 0.
        cand1 = np.array([bc.a, -(bc.b + z)], dtype=complex)
        cand2 = np.array([-(bc.c + z), bc.d], dtype=complex)
        v = cand1 if np.linalg.norm(cand1) >= np.linalg.norm(cand2) else cand2
        if np.linalg.norm(v) == 0:
            raise NotRegularError("internal error: zero eigenvector candidate")
        return _normalize_eigvec(v)

    va = eigvec(z1)
    vb = eigvec(z2)
    mat = np.column_stack([va, vb])
    if abs(np.linalg.det(mat)) < 1e-14 * max(1.0, float(np.abs(mat).max()) ** 2):
        raise NotRegularError("internal error: eigenvector matrix is singular")
    inv = np.linalg.inv(mat)
    _check_pair(m, va, z1)
    _check_pair(m, vb, z2)
    return SpectralParams(
        z1, z2, t1, t2,
        alpha=(va[0], va[1]), beta=(vb[0], vb[1]),
        alpha_prime=(inv[0, 0], inv[0, 1]), beta_prime=(inv[1, 0], inv[1, 1]),
        near_degenerate=cls.near_degenerate,
    )


def _check_pair(m: np.ndarray, v: np.ndarray, z: complex) -> None:
    res = m @ v + z * v
    scale = max(1.0, float(np.abs(m).max()), abs(z))
    if np.max(np.abs(res)) > 1e-8 * scale:
        raise NotRegularError("internal error: eigenvector residual too large")
