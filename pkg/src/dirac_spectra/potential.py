"""Off-diagonal Dirac potentials and their Fourier-side matrix representation.

A potential is v = [[0, P], [Q, 0]] with P, Q in L^2(0, pi).  In the basis
Phi the multiplication operator F -> v F has matrix elements that depend on
the index pair (j, k) only through the sum m = j + k:

    V^{eta nu}_{jk} = w^{eta nu}(j + k),
    w^{eta nu}(m)   = (g^{eta nu} P)^(-m) + (h^{eta nu} Q)^(m),

where g, h are smooth products of the coefficient functions of Phi and
its biorthogonal system, and ^ denotes Fourier coefficients on
{e^{ikx}, k even}.  This one-dimensional structure is what the truncated
(Galerkin) operator and all decay diagnostics are built on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _quad
from .basis import SpectralBasis

__all__ = [
    "Entry", "PotentialSpec", "MatrixRep",
    "fourier_coeffs", "matrix_rep", "r_tail",
]


def _as_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


@dataclass(frozen=True)
class Entry:
    """One samplable scalar entry (P or Q) on [0, pi] with jump metadata."""

    func: object  # callable ndarray -> complex ndarray
    jumps: tuple[float, ...] = ()
    label: str = "custom"

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.asarray(self.func(x), dtype=complex) * np.ones_like(x, dtype=complex)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "Entry":
        return Entry(lambda x: np.zeros_like(x, dtype=complex), (), "zero")

    @staticmethod
    def constant(value) -> "Entry":
        c = _as_complex(value)
        return Entry(lambda x: np.full_like(x, c, dtype=complex), (), "constant")

    @staticmethod
    def exponential(coef, k: int) -> "Entry":
        if k % 2 != 0:
            raise ValueError("exponential frequency must be even")
        c = _as_complex(coef)
        return Entry(lambda x: c * np.exp(1j * k * x), (), f"exp[{k}]")

    @staticmethod
    def step(left, right, at: float = math.pi / 2) -> "Entry":
        if not 0.0 < at < math.pi:
            raise ValueError("step location must be interior to (0, pi)")
        lv, rv = _as_complex(left), _as_complex(right)
        return Entry(lambda x: np.where(x < at, lv, rv), (at,), "step")

    @staticmethod
    def sawtooth(amp, periods: int = 1) -> "Entry":
        if periods < 1:
            raise ValueError("periods must be >= 1")
        a = _as_complex(amp)
        w = math.pi / periods

        def f(x):
            y = np.mod(np.asarray(x, dtype=float), w) / w
            # at a period boundary the left-limit value is wanted, not 0
            y = np.where((np.asarray(x) > 1e-12) & (y < 1e-12), 1.0, y)
            return a * y

        jumps = tuple(i * w for i in range(1, periods))
        return Entry(f, jumps, f"sawtooth[{periods}]")

    @staticmethod
    def fourier(table: dict[int, complex]) -> "Entry":
        ks, cs = [], []
        for k, c in table.items():
            k = int(k)
            if k % 2 != 0:
                raise ValueError("Fourier table must be indexed by even k")
            ks.append(k)
            cs.append(_as_complex(c))
        ks = np.asarray(ks, dtype=float)
        cs = np.asarray(cs, dtype=complex)

        def f(x):
            return cs @ np.exp(1j * np.outer(ks, x))

        return Entry(f, (), "fourier")

    @staticmethod
    def samples(x, values) -> "Entry":
        x = np.asarray(x, dtype=float)
        v = np.asarray([_as_complex(t) for t in values], dtype=complex)
        if x.shape != v.shape:
            raise ValueError("samples: x and values lengths differ")

        def f(t):
            return np.interp(t, x, v.real) + 1j * np.interp(t, x, v.imag)

        return Entry(f, (), "samples")

    @staticmethod
    def from_json(obj) -> "Entry":
        if obj is None:
            return Entry.zero()
        typ = obj.get("type", "builtin")
        if typ == "builtin":
            name = obj["name"]
            if name == "zero":
                return Entry.zero()
            if name == "constant":
                return Entry.constant(obj["value"])
            if name == "exponential":
                return Entry.exponential(obj["coef"], int(obj["k"]))
            if name == "step":
                return Entry.step(obj["left"], obj["right"],
                                  float(obj.get("at", math.pi / 2)))
            if name == "sawtooth":
                return Entry.sawtooth(obj["amp"], int(obj.get("periods", 1)))
            raise ValueError(f"unknown builtin potential entry {name!r}")
        if typ == "fourier":
            return Entry.fourier({int(k): v for k, v in obj["coeffs"].items()})
        if typ == "samples":
            return Entry.samples(obj["x"], obj["values"])
        raise ValueError(f"unknown potential entry type {typ!r}")


@dataclass(frozen=True)
class PotentialSpec:
    """v = [[0, P], [Q, 0]] plus a declared smoothness tag."""

    P: Entry
    Q: Entry
    smoothness: str = "L2"

    def jumps(self) -> tuple[float, ...]:
        return tuple(sorted(set(self.P.jumps) | set(self.Q.jumps)))

    def norm(self, nodes: int = 2048) -> float:
        """(||P||^2 + ||Q||^2)^(1/2) with ||f||^2 = (1/pi) int |f|^2."""
        x, w = _quad.quad_nodes(nodes, self.jumps())
        s = np.sum((np.abs(self.P(x)) ** 2 + np.abs(self.Q(x)) ** 2) * w)
        return math.sqrt(float(s.real) / math.pi)

    @staticmethod
    def from_json(obj) -> "PotentialSpec":
        return PotentialSpec(Entry.from_json(obj.get("P")),
                             Entry.from_json(obj.get("Q")),
                             obj.get("smoothness", "L2"))

    @staticmethod
    def zero() -> "PotentialSpec":
        return PotentialSpec(Entry.zero(), Entry.zero())


def fourier_coeffs(f, K: int, nodes: int, jumps: tuple[float, ...] = ()) -> dict[int, complex]:
    """Fourier table {f^(k) : k even, |k| <= K} on (1/pi) int f e^{-ikx}."""
    if K % 2 != 0 or K < 0:
        raise ValueError("K must be a nonnegative even integer")
    if nodes < 4 * max(K, 1):
        raise ValueError("aliasing guard: need nodes >= 4K")
    ks = np.arange(-K, K + 1, 2)
    cs = _quad.fourier_coefficients(f, ks, nodes=nodes, jumps=jumps)
    return {int(k): complex(c) for k, c in zip(ks, cs)}


@dataclass(frozen=True)
class MatrixRep:
    """The four even-lattice sequences w^{eta nu} truncated to |m| <= M_w."""

    M_w: int
    ms: np.ndarray                       # even lattice [-M_w, M_w]
    w: dict[tuple[int, int], np.ndarray]  # (eta, nu) -> values along ms
    r: np.ndarray = field(default=None)   # r(m) = max_{eta,nu} |w^{eta nu}(m)|

    def __post_init__(self):
        if self.r is None:
            r = np.max(np.abs(np.stack([self.w[k] for k in sorted(self.w)])), axis=0)
            object.__setattr__(self, "r", r)

    def _idx(self, m: int) -> int:
        if m % 2 != 0 or abs(m) > self.M_w:
            raise IndexError(f"lattice point {m} outside stored range")
        return (m + self.M_w) // 2

    def w_at(self, eta: int, nu: int, m: int) -> complex:
        return complex(self.w[(eta, nu)][self._idx(m)])

    def entry(self, eta: int, nu: int, j: int, k: int) -> complex:
        return self.w_at(eta, nu, j + k)

    def r_at(self, m: int) -> float:
        return float(self.r[self._idx(m)])

    def __add__(self, other: "MatrixRep") -> "MatrixRep":
        if self.M_w != other.M_w:
            raise ValueError("mismatched truncations")
        return MatrixRep(self.M_w, self.ms,
                         {k: self.w[k] + other.w[k] for k in self.w})


def matrix_rep(basis: SpectralBasis, v: PotentialSpec, M_w: int,
               nodes: int | None = None) -> MatrixRep:
    """Sequences w^{eta nu}(m) of the multiplication operator F -> v F.

    The smooth factors multiplying P and Q are read off from the closed
    forms of the basis and its biorthogonal system, so the one-dimensional
    structure V_{jk} = w(j+k) is exact by construction.
    """
    if M_w % 2 != 0 or M_w < 0:
        raise ValueError("M_w must be a nonnegative even integer")
    if nodes is None:
        nodes = max(4096, 4 * M_w + 64)
    if nodes < 4 * max(M_w, 1):
        raise ValueError("aliasing guard: need nodes >= 4*M_w")
    ms = np.arange(-M_w, M_w + 1, 2)
    jumps = v.jumps()
    x, qw = _quad.quad_nodes(nodes, jumps)
    pv = v.P(x)
    qv = v.Q(x)
    w: dict[tuple[int, int], np.ndarray] = {}
    for eta in (1, 2):
        d1, d2 = basis._phi_tilde_coef(eta, x)
        for nu in (1, 2):
            c1, c2 = basis._phi_coef(nu, x)
            g = c2 * np.conj(d1)   # multiplies P, paired with e^{+imx}
            h = c1 * np.conj(d2)   # multiplies Q, paired with e^{-imx}
            # (gP)^(-m) + (hQ)^(m) in one contraction each
            p_hat = (np.exp(1j * np.outer(ms.astype(float), x)) @ (g * pv * qw)) / math.pi
            q_hat = (np.exp(-1j * np.outer(ms.astype(float), x)) @ (h * qv * qw)) / math.pi
            w[(eta, nu)] = p_hat + q_hat
    return MatrixRep(M_w, ms, w)


def r_tail(rep: MatrixRep, m: int) -> float:
    """l^2 tail (sum over |j| >= m of r(j)^2)^(1/2) of the stored sequence."""
    if m < 0 or m > rep.M_w:
        raise ValueError("tail cutoff outside stored range")
    mask = np.abs(rep.ms) >= m
    return float(np.sqrt(np.sum(rep.r[mask] ** 2)))
