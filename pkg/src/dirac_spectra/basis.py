"""Riesz basis of root functions of the free Dirac operator on [0, pi].

For a regular boundary condition the free operator has an explicit
system of root functions

    phi_k^nu(x) = (c1_nu(x) e^{-ikx}, c2_nu(x) e^{ikx}),   k in 2Z,

where the coefficient functions c1, c2 are exponentials (times a linear
polynomial in the degenerate case) built from the spectral parameters.
The system is the image of the plain exponential basis under an explicit
isomorphism A acting point-wise, which is what makes expansions and
point-wise convergence analysis computable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _quad
from .bc import (
    BcClass,
    BoundaryCondition,
    ClassifiedBc,
    SpectralParams,
    classify_bc,
    spectral_params,
)

__all__ = ["Jump", "VectorFunction", "SpectralBasis", "inner", "expand"]


@dataclass(frozen=True)
class Jump:
    """Declared discontinuity with optional one-sided values per component."""

    x: float
    left: tuple[complex, complex] | None = None
    right: tuple[complex, complex] | None = None


@dataclass(frozen=True)
class VectorFunction:
    """Two-component samplable function on [0, pi] with jump metadata."""

    f1: object  # callable ndarray -> complex ndarray
    f2: object
    jumps: tuple[Jump, ...] = ()

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.stack([
            np.asarray(self.f1(x), dtype=complex),
            np.asarray(self.f2(x), dtype=complex),
        ])

    def jump_locations(self) -> tuple[float, ...]:
        return tuple(j.x for j in self.jumps)

    def one_sided(self, x: float) -> tuple[np.ndarray, np.ndarray]:
        """(left, right) component values at x, honoring declared jumps."""
        for j in self.jumps:
            if abs(j.x - x) < 1e-12 and j.left is not None and j.right is not None:
                return (np.asarray(j.left, dtype=complex),
                        np.asarray(j.right, dtype=complex))
        v = self(np.array([x]))[:, 0]
        return v, v


def _as_vf(f1, f2, jumps=()) -> VectorFunction:
    return VectorFunction(f1, f2, tuple(jumps))


def _reflected(jumps) -> tuple[float, ...]:
    locs = set()
    for j in jumps:
        locs.add(j.x)
        locs.add(math.pi - j.x)
    return tuple(sorted(locs))


@dataclass(frozen=True)
class SpectralBasis:
    """Closed-form evaluators for Phi, its biorthogonal system and A, A^-1."""

    bc: BoundaryCondition
    cls: ClassifiedBc = field(default=None)
    params: SpectralParams = field(default=None)

    def __post_init__(self):
        if self.cls is None:
            object.__setattr__(self, "cls", classify_bc(self.bc))
        if self.params is None:
            object.__setattr__(self, "params", spectral_params(self.bc, self.cls))

    @property
    def degenerate(self) -> bool:
        return self.cls.tag is BcClass.REGULAR_DEGENERATE

    def tau(self, nu: int) -> complex:
        return self.params.tau1 if nu == 1 else self.params.tau2

    # -- coefficient functions: phi_k^nu = (c1(x) e^{-ikx}, c2(x) e^{ikx}) --

    def _phi_coef(self, nu: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        p = self.params
        if not self.degenerate:
            vec = p.alpha if nu == 1 else p.beta
            t = self.tau(nu)
            return (vec[0] * np.exp(1j * t * (math.pi - x)),
                    vec[1] * np.exp(1j * t * x))
        t = p.tau_star
        e1 = np.exp(1j * t * (math.pi - x))
        e2 = np.exp(1j * t * x)
        a1, a2 = p.alpha
        b1, b2 = p.beta
        if nu == 1:
            return a1 * e1, a2 * e2
        return (b1 - a1 * x) * e1, (b2 + a2 * x) * e2

    def _phi_tilde_coef(self, nu: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        p = self.params
        if not self.degenerate:
            prim = p.alpha_prime if nu == 1 else p.beta_prime
            tbar = np.conj(self.tau(nu))
            return (np.conj(prim[0]) * np.exp(1j * tbar * (math.pi - x)),
                    np.conj(prim[1]) * np.exp(1j * tbar * x))
        tbar = np.conj(p.tau_star)
        dinv = 1.0 / np.conj(p.delta)
        e1 = np.exp(1j * tbar * (math.pi - x))
        e2 = np.exp(1j * tbar * x)
        a1, a2 = np.conj(p.alpha[0]), np.conj(p.alpha[1])
        b1, b2 = np.conj(p.beta[0]), np.conj(p.beta[1])
        if nu == 1:
            # adjoint of A^{-1} applied to (e^{ikx}, 0)
            return (dinv * (b2 + a2 * (math.pi - x)) * e1,
                    -dinv * (b1 - a1 * (math.pi - x)) * e2)
        return -dinv * a2 * e1, dinv * a1 * e2

    @staticmethod
    def _check_index(k: int, nu: int) -> None:
        if k % 2 != 0:
            raise ValueError(f"basis index k must be even, got {k}")
        if nu not in (1, 2):
            raise ValueError(f"branch nu must be 1 or 2, got {nu}")

    def phi(self, k: int, nu: int, x) -> np.ndarray:
        self._check_index(k, nu)
        x = np.asarray(x, dtype=float)
        c1, c2 = self._phi_coef(nu, x)
        return np.stack([c1 * np.exp(-1j * k * x), c2 * np.exp(1j * k * x)])

    def phi_tilde(self, k: int, nu: int, x) -> np.ndarray:
        self._check_index(k, nu)
        x = np.asarray(x, dtype=float)
        c1, c2 = self._phi_tilde_coef(nu, x)
        return np.stack([c1 * np.exp(-1j * k * x), c2 * np.exp(1j * k * x)])

    def phi_as_vf(self, k: int, nu: int) -> VectorFunction:
        return _as_vf(lambda x: self.phi(k, nu, x)[0],
                      lambda x: self.phi(k, nu, x)[1])

    def phi_tilde_as_vf(self, k: int, nu: int) -> VectorFunction:
        return _as_vf(lambda x: self.phi_tilde(k, nu, x)[0],
                      lambda x: self.phi_tilde(k, nu, x)[1])

    # -- the isomorphism transporting periodic structure to bc --

    def apply_A(self, u: VectorFunction) -> VectorFunction:
        p = self.params
        if not self.degenerate:
            a1, a2 = p.alpha
            b1, b2 = p.beta
            t1, t2 = p.tau1, p.tau2

            def F1(x):
                return (a1 * np.exp(1j * t1 * (math.pi - x)) * u.f1(math.pi - x)
                        + b1 * np.exp(1j * t2 * (math.pi - x)) * u.f2(math.pi - x))

            def F2(x):
                return (a2 * np.exp(1j * t1 * x) * u.f1(x)
                        + b2 * np.exp(1j * t2 * x) * u.f2(x))
        else:
            a1, a2 = p.alpha
            b1, b2 = p.beta
            t = p.tau_star

            def F1(x):
                e = np.exp(1j * t * (math.pi - x))
                return e * (a1 * u.f1(math.pi - x)
                            + (b1 - a1 * x) * u.f2(math.pi - x))

            def F2(x):
                e = np.exp(1j * t * x)
                return e * (a2 * u.f1(x) + (b2 + a2 * x) * u.f2(x))

        jump_locs = _reflected(u.jumps)
        return _as_vf(F1, F2, (Jump(t) for t in jump_locs))

    def apply_A_inv(self, U: VectorFunction) -> VectorFunction:
        p = self.params
        if not self.degenerate:
            ap1, ap2 = p.alpha_prime
            bp1, bp2 = p.beta_prime
            t1, t2 = p.tau1, p.tau2

            def f(x):
                return np.exp(-1j * t1 * x) * (ap1 * U.f1(math.pi - x) + ap2 * U.f2(x))

            def g(x):
                return np.exp(-1j * t2 * x) * (bp1 * U.f1(math.pi - x) + bp2 * U.f2(x))
        else:
            a1, a2 = p.alpha
            b1, b2 = p.beta
            t = p.tau_star
            dinv = 1.0 / p.delta

            def f(x):
                return dinv * np.exp(-1j * t * x) * (
                    (b2 + a2 * x) * U.f1(math.pi - x)
                    - (b1 - math.pi * a1 + a1 * x) * U.f2(x))

            def g(x):
                return dinv * np.exp(-1j * t * x) * (
                    -a2 * U.f1(math.pi - x) + a1 * U.f2(x))

        jump_locs = _reflected(U.jumps)
        return _as_vf(f, g, (Jump(t) for t in jump_locs))

    def e_basis(self, k: int, nu: int) -> VectorFunction:
        """Plain exponential basis element (e^{ikx}, 0) or (0, e^{ikx})."""
        self._check_index(k, nu)
        if nu == 1:
            return _as_vf(lambda x: np.exp(1j * k * x),
                          lambda x: np.zeros_like(x, dtype=complex))
        return _as_vf(lambda x: np.zeros_like(x, dtype=complex),
                      lambda x: np.exp(1j * k * x))


def inner(F: VectorFunction, G: VectorFunction, nodes: int = 4096) -> complex:
    """(1/pi) * int_0^pi (F1 conj(G1) + F2 conj(G2)) dx by panel quadrature.

    Panels split at the declared jumps of both arguments; accuracy is
    spectral on smooth pieces.
    """
    jumps = tuple(F.jump_locations()) + tuple(G.jump_locations())
    x, w = _quad.quad_nodes(nodes, jumps)
    fv = F(x)
    gv = np.conj(G(x))
    return complex(np.sum((fv[0] * gv[0] + fv[1] * gv[1]) * w) / math.pi)


def expand(basis: SpectralBasis, F: VectorFunction, M: int,
           nodes: int = 4096, method: str = "gauge") -> dict[tuple[int, int], complex]:
    """Coefficients F_k^nu = <F, phi_tilde_k^nu> for |k| <= M.

    method="gauge" (default) computes the plain Fourier coefficients of the
    components of A^{-1} F, which equal the Phi-coefficients exactly;
    method="direct" uses inner products against the biorthogonal system.
    """
    if M < 0:
        raise ValueError("M must be >= 0")
    ks = np.arange(-M, M + 1, 2) if M % 2 == 0 else np.arange(-M + 1, M, 2)
    out: dict[tuple[int, int], complex] = {}
    if method == "gauge":
        u = basis.apply_A_inv(F)
        jumps = u.jump_locations()
        c1 = _quad.fourier_coefficients(u.f1, ks, nodes=nodes, jumps=jumps)
        c2 = _quad.fourier_coefficients(u.f2, ks, nodes=nodes, jumps=jumps)
        for i, k in enumerate(ks):
            out[(int(k), 1)] = complex(c1[i])
            out[(int(k), 2)] = complex(c2[i])
        return out
    if method == "direct":
        for k in ks:
            for nu in (1, 2):
                out[(int(k), nu)] = inner(F, basis.phi_tilde_as_vf(int(k), nu), nodes)
        return out
    raise ValueError(f"unknown expansion method {method!r}")
