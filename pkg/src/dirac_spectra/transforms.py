"""Reduction of weighted, full-matrix Dirac problems to canonical form.

A problem (1/rho) * (i J d/dx + T) on [x1, x2] with a positive weight rho
and a full 2x2 potential T reduces in two steps to the canonical
off-diagonal problem on [0, pi]:

  1. change of variable t(x) = K int rho, K = pi / int rho, which turns
     the weighted operator into K times an unweighted one on [0, pi];
  2. gauge similarity by diag(e^{-i s1}, e^{i s2}) with s_j the
     antiderivatives of the diagonal entries, which removes the diagonal
     of the potential and rotates the boundary condition coefficients.

The original spectrum is K times the spectrum of the reduced canonical
operator, and endpoint limits of the expansions transport through the
gauge phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import PchipInterpolator

from .bc import BcClass, BoundaryCondition, ClassifiedBc, NotRegularError, classify_bc
from .basis import SpectralBasis
from .expansion import endpoint_limits
from .potential import Entry, PotentialSpec

__all__ = [
    "WeightedProblem", "MapData", "GaugeData",
    "change_of_variable", "gauge_reduce", "reduce_problem",
    "adjoint_bc", "is_selfadjoint",
    "endpoint_limits_general", "gauge_endpoint_limits",
]


def _as_callable(f):
    if callable(f):
        return f
    val = complex(f)
    return lambda x: np.full_like(np.asarray(x, dtype=float), val, dtype=complex)


@dataclass(frozen=True)
class WeightedProblem:
    """(1/rho) * (i diag(1,-1) d/dx + T) on [x1, x2] under bc."""

    x1: float
    x2: float
    rho: object                 # callable, positive
    T: tuple                    # 2x2 nested tuple of callables or constants
    bc: BoundaryCondition

    def __post_init__(self):
        if not self.x2 > self.x1:
            raise ValueError("need x2 > x1")
        object.__setattr__(self, "T", tuple(tuple(_as_callable(t) for t in row)
                                            for row in self.T))
        object.__setattr__(self, "rho", _as_callable(self.rho))

    @property
    def ell(self) -> float:
        return self.x2 - self.x1


@dataclass(frozen=True)
class MapData:
    K: float
    t_of_x: object
    x_of_t: object


def change_of_variable(prob: WeightedProblem, nodes: int = 4096):
    """Rescale [x1, x2] to [0, pi] by t(x) = K int rho.

    Returns (S, map_data) where S is the 2x2 potential of the unweighted
    problem on [0, pi]: S_ij(t) = T_ij(x(t)) / (K rho(x(t))).
    """
    xs = np.linspace(prob.x1, prob.x2, nodes)
    rv = np.asarray(prob.rho(xs), dtype=complex)
    if np.any(rv.real <= 0.0) or np.max(np.abs(rv.imag)) > 1e-12 * np.max(np.abs(rv)):
        raise ValueError("weight must be positive on samples")
    rv = rv.real
    cum = cumulative_trapezoid(rv, xs, initial=0.0)
    K = math.pi / cum[-1]
    ts = K * cum
    if np.any(np.diff(ts) <= 0):
        raise ValueError("cumulative weight integral is not strictly increasing")
    x_of_t = PchipInterpolator(ts, xs)
    t_of_x = PchipInterpolator(xs, ts)
    md = MapData(K, t_of_x, x_of_t)

    def make(Tij):
        def S_ij(t):
            x = x_of_t(np.clip(np.asarray(t, dtype=float), 0.0, math.pi))
            return np.asarray(Tij(x), dtype=complex) / (K * np.asarray(prob.rho(x), dtype=complex))
        return S_ij

    S = tuple(tuple(make(prob.T[i][j]) for j in range(2)) for i in range(2))
    return S, md


@dataclass(frozen=True)
class GaugeData:
    s1: object                  # callable antiderivative of S11
    s2: object                  # callable antiderivative of S22
    s1_pi: complex
    s2_pi: complex
    v: PotentialSpec
    bc_t: BoundaryCondition
    cls_t: ClassifiedBc


def gauge_reduce(S, bc: BoundaryCondition, nodes: int = 4096) -> GaugeData:
    """Remove the diagonal of S by the similarity diag(e^{-is1}, e^{is2}).

    The off-diagonal entries pick up the phase e^{-+ i(s1+s2)} and the bc
    coefficients rotate by e^{i s_j(pi)} factors.  Regularity of the
    transformed bc is what counts; it is classified here.
    """
    ts = np.linspace(0.0, math.pi, nodes)
    s11 = np.asarray(S[0][0](ts), dtype=complex)
    s22 = np.asarray(S[1][1](ts), dtype=complex)
    c1 = cumulative_trapezoid(s11, ts, initial=0.0)
    c2 = cumulative_trapezoid(s22, ts, initial=0.0)
    s1r = PchipInterpolator(ts, c1.real)
    s1i = PchipInterpolator(ts, c1.imag)
    s2r = PchipInterpolator(ts, c2.real)
    s2i = PchipInterpolator(ts, c2.imag)

    def s1(t):
        t = np.asarray(t, dtype=float)
        return s1r(t) + 1j * s1i(t)

    def s2(t):
        t = np.asarray(t, dtype=float)
        return s2r(t) + 1j * s2i(t)

    def v12(t):
        return np.asarray(S[0][1](t), dtype=complex) * np.exp(-1j * (s1(t) + s2(t)))

    def v21(t):
        return np.asarray(S[1][0](t), dtype=complex) * np.exp(1j * (s1(t) + s2(t)))

    s1_pi = complex(c1[-1])
    s2_pi = complex(c2[-1])
    bc_t = BoundaryCondition(
        a=bc.a,
        b=bc.b * np.exp(1j * s1_pi),
        c=bc.c * np.exp(1j * s2_pi),
        d=bc.d * np.exp(1j * (s1_pi + s2_pi)),
    )
    v = PotentialSpec(Entry(v12, (), "gauge12"), Entry(v21, (), "gauge21"))
    return GaugeData(s1, s2, s1_pi, s2_pi, v, bc_t, classify_bc(bc_t))


def reduce_problem(prob: WeightedProblem, nodes: int = 4096):
    """Full reduction: (map data, gauge data).  The weighted spectrum is
    map.K times the spectrum of the canonical operator (gauge.bc_t, gauge.v)."""
    S, md = change_of_variable(prob, nodes)
    gd = gauge_reduce(S, prob.bc, nodes)
    return md, gd


def adjoint_bc(bc: BoundaryCondition, tol: float = 1e-10) -> BoundaryCondition:
    """Standard-form coefficients of the adjoint boundary condition."""
    delta = bc.regularity()
    if abs(delta) <= tol * bc.scale():
        raise NotRegularError("adjoint undefined for non-regular bc")
    dbar = np.conj(delta)
    return BoundaryCondition(
        a=-np.conj(bc.d) / dbar,
        b=np.conj(bc.c) / dbar,
        c=np.conj(bc.b) / dbar,
        d=-np.conj(bc.a) / dbar,
    )


def is_selfadjoint(bc: BoundaryCondition, T, tol: float = 1e-10,
                   nodes: int = 64) -> bool:
    """True iff the bc equals its adjoint and T is pointwise hermitian."""
    try:
        adj = adjoint_bc(bc, tol)
    except NotRegularError:
        return False
    eps = tol * bc.scale()
    if max(abs(adj.a - bc.a), abs(adj.b - bc.b),
           abs(adj.c - bc.c), abs(adj.d - bc.d)) > eps:
        return False
    T = tuple(tuple(_as_callable(t) for t in row) for row in T)
    xs = np.linspace(0.0, math.pi, nodes)
    for i in range(2):
        for j in range(2):
            if np.max(np.abs(np.asarray(T[i][j](xs)) -
                             np.conj(np.asarray(T[j][i](xs))))) > tol:
                return False
    return True


def endpoint_limits_general(prob: WeightedProblem, sides) -> tuple[np.ndarray, np.ndarray]:
    """Endpoint limits of the weighted-problem expansion from the one-sided
    boundary values sides = (f1(x1+0), f1(x2-0), f2(x1+0), f2(x2-0)).

    The formulas coincide with the canonical transition-matrix ones taken
    with the problem's own bc coefficients.
    """
    f1p, f1m, f2p, f2m = (complex(s) for s in sides)
    return endpoint_limits(prob.bc, (f1p, f1m, f2p, f2m))


def gauge_endpoint_limits(prob: WeightedProblem, sides,
                          nodes: int = 4096) -> tuple[np.ndarray, np.ndarray]:
    """Same limits computed the long way around: push the boundary values
    through the gauge, use the transition matrix of the transformed bc,
    and undo the gauge phases.  Cross-check path for endpoint_limits_general.
    """
    _, gd = reduce_problem(prob, nodes)
    f1p, f1m, f2p, f2m = (complex(s) for s in sides)
    ph1 = np.exp(-1j * gd.s1_pi)
    ph2 = np.exp(1j * gd.s2_pi)
    at0, atpi = endpoint_limits(gd.bc_t, (f1p, ph1 * f1m, f2p, ph2 * f2m))
    atpi = np.array([atpi[0] / ph1, atpi[1] / ph2])
    return at0, atpi
