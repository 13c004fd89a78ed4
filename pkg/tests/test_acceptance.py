"""Acceptance suite: eleven end-to-end criteria, one PASS/FAIL line each.

Each test computes its verdict first, prints a single line, then asserts,
so the printed record is complete even on failure.  Deliberately slower
and broader than the unit suites; still sized for a desktop run.
"""

import math

import numpy as np
import pytest

from dirac_spectra import (
    ANTIPERIODIC,
    Entry,
    Jump,
    PERIODIC_PLUS,
    PotentialSpec,
    RealDiracProblem,
    SeparatedSelfAdjointBC,
    SpectralBasis,
    VectorFunction,
    WeightSeq,
    WeightedProblem,
    build_truncated,
    endpoint_limits,
    endpoint_limits_general,
    equiconv_deficit,
    free_partial_sum,
    gauge_endpoint_limits,
    localize,
    matrix_rep,
    muckenhoupt_running,
    multiply_in_weighted_space,
    pointwise_limit,
    reduce_problem,
    resolvent_size,
    resolvent_size_bound,
    sa_endpoint_limit,
    sa_expand,
    sa_spectrum,
    spectrum,
    fourier_coeffs,
)
from dirac_spectra.bc import BoundaryCondition
from dirac_spectra.expansion import rectangle_height
from dirac_spectra.galerkin import free_lattice
from dirac_spectra.hilbert import hilbert

import oracles
from conftest import random_degenerate, random_strictly_regular
from test_basis import gram_error


def verdict(num: int, name: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    suffix = f"  ({detail})" if detail else ""
    print(f"\n[acceptance {num:02d}] {name}: {tag}{suffix}")
    assert ok, f"acceptance {num:02d} {name} failed {suffix}"


def _rng():
    return np.random.default_rng(1234)


def test_01_biorthogonality():
    rng = _rng()
    bcs = [random_strictly_regular(rng) for _ in range(10)]
    bcs += [random_degenerate(rng) for _ in range(3)]
    bcs += [PERIODIC_PLUS, ANTIPERIODIC]
    worst = 0.0
    for bc in bcs:
        worst = max(worst, gram_error(SpectralBasis(bc), k_max=20, nodes=4096))
    verdict(1, "biorthogonality of the basis and its dual system",
            worst < 1e-8, f"max gram residual {worst:.2e}")


def test_02_free_spectrum_exact():
    rng = _rng()
    worst = 0.0
    for bc in [random_strictly_regular(rng), random_degenerate(rng),
               PERIODIC_PLUS, ANTIPERIODIC]:
        sb = SpectralBasis(bc)
        eigs = np.sort_complex(spectrum(build_truncated(sb, None, 32)))
        lattice = np.sort_complex(np.array(list(free_lattice(sb, 32).values())))
        worst = max(worst, float(np.max(np.abs(eigs - lattice))))
    verdict(2, "unperturbed spectrum equals the explicit lattice",
            worst < 1e-10, f"max deviation {worst:.2e}")


def test_03_localization_homotopy():
    rng = _rng()
    base = PotentialSpec(Entry.step(0.8, -0.4), Entry.sawtooth(0.6, periods=2),
                         smoothness="BV")
    scale = 1.0 / base.norm()
    M, N = 48, 4
    ok = True
    detail = []
    for bc in [random_strictly_regular(rng), PERIODIC_PLUS]:
        sb = SpectralBasis(bc)
        T = rectangle_height(sb, 1.0)
        counts = []
        for zeta in (0.0, 0.25, 0.5, 0.75, 1.0):
            s = zeta * scale
            v = PotentialSpec(
                Entry(lambda x, s=s: s * base.P(x), base.P.jumps, "scaled"),
                Entry(lambda x, s=s: s * base.Q(x), base.Q.jumps, "scaled"),
                smoothness="BV")
            rep = matrix_rep(sb, v, 2 * M + 8)
            op = build_truncated(sb, rep, M)
            rpt = localize(sb, spectrum(op), zeta, N, T, M=M)
            ok = ok and rpt.ok
            # disks right at the edge-exclusion line can trade places with
            # the excluded set under perturbation; count interior disks only
            interior = sum(c for (m, _), c in rpt.disk_counts.items()
                           if abs(m) <= M - 12)
            counts.append((rpt.rect_count, interior, len(rpt.violations)))
        ok = ok and len(set(counts)) == 1
        detail.append(str(counts[0]))
    verdict(3, "eigenvalue counts stay fixed along the potential homotopy",
            ok, "counts " + "; ".join(detail))


def test_04_resolvent_size_bound():
    rng = _rng()
    worst = -np.inf
    for _ in range(1000):
        m = 2 * int(rng.integers(-200, 201))
        xi = float(rng.uniform(-0.999, 0.999))
        t = float(rng.uniform(-6.0, 6.0))
        if xi * xi + t * t < 1e-8:
            continue
        excess = resolvent_size(m + xi + 1j * t, K=10 ** 6) \
            - resolvent_size_bound(xi, t)
        worst = max(worst, excess)
    verdict(4, "lattice resolvent sums stay under the closed-form envelope",
            worst <= 1e-6, f"worst excess {worst:.2e}")


def test_05_interior_eigenvalues_vs_ode_oracle():
    sb = SpectralBasis(PERIODIC_PLUS)
    v = PotentialSpec(Entry.constant(0.3), Entry.constant(0.3))
    M = 128
    rep = matrix_rep(sb, v, 2 * M + 8)
    eigs = spectrum(build_truncated(sb, rep, M))
    interior = eigs[np.abs(eigs.real) <= M / 4]
    worst = 0.0
    for lam in interior:
        true = oracles.dirac_eigen_oracle(PERIODIC_PLUS, 0.3, 0.3, [lam],
                                          const=True)[0]
        worst = max(worst, abs(true - lam))
    verdict(5, "interior matrix eigenvalues match the ODE monodromy oracle",
            worst < 1e-6, f"{interior.size} eigenvalues, max error {worst:.2e}")


def test_06_jump_midpoint_convergence():
    rng = _rng()
    F = VectorFunction(lambda x: np.where(x < math.pi / 2, 1.0 + 0j, 0j),
                       lambda x: np.where(x < math.pi / 2, 0.5 + 0j, -0.5 + 0j),
                       (Jump(math.pi / 2, (1.0, 0.5), (0.0, -0.5)),))
    Ms = (64, 128, 256)
    ok = True
    worst_final = 0.0
    for _ in range(5):
        bc = random_strictly_regular(rng)
        sb = SpectralBasis(bc)
        lims = np.array([pointwise_limit(bc, F, t) for t in
                         (math.pi / 2, 0.9)])
        errs = []
        for M in Ms:
            s = free_partial_sum(sb, F, M, np.array([math.pi / 2, 0.9]))
            errs.append(np.max(np.abs(s.T - lims), axis=1))
        errs = np.array(errs)            # (M, x)
        ok = ok and errs[-1, 0] <= 0.02
        ok = ok and all(errs[i + 1, 0] <= errs[i, 0] * 1.05 + 1e-12
                        for i in range(len(Ms) - 1))
        worst_final = max(worst_final, float(errs[-1, 0]))
    verdict(6, "discontinuous data converge to half-sum values at the jump",
            ok, f"worst midpoint error at M=256: {worst_final:.2e}")


def test_07_endpoint_transition_limits():
    rng = _rng()
    ok = True
    worst_alg = 0.0
    for _ in range(10):
        bc = random_strictly_regular(rng)
        sb = SpectralBasis(bc)
        u0 = complex(rng.standard_normal(), rng.standard_normal())
        v0 = complex(rng.standard_normal(), rng.standard_normal())
        F = VectorFunction(lambda x, u0=u0: u0 + x + 0j,
                           lambda x, v0=v0: v0 - 0.5 * x + 0j)
        lims = np.array([pointwise_limit(bc, F, t) for t in (0.0, math.pi)])
        errs = []
        for M in (64, 128, 256):
            s = free_partial_sum(sb, F, M, np.array([0.0, math.pi]))
            errs.append(float(np.max(np.abs(s.T - lims))))
        ok = ok and all(errs[i + 1] <= errs[i] * 1.05 + 1e-12 for i in range(2))
        # boundary-compatible data: the predicted limits are the data itself
        A = np.array([[1 + bc.b, bc.a], [bc.d, bc.c + 1]], dtype=complex)
        rhs = np.array([-bc.b * math.pi, -(bc.d + 1) * math.pi], dtype=complex)
        p0, q0 = np.linalg.solve(A, rhs)
        at0, atpi = endpoint_limits(bc, (p0, p0 + math.pi, q0, q0 + math.pi))
        alg = max(abs(at0[0] - p0), abs(at0[1] - q0),
                  abs(atpi[0] - p0 - math.pi), abs(atpi[1] - q0 - math.pi))
        worst_alg = max(worst_alg, alg / max(1.0, abs(p0), abs(q0)))
        ok = ok and worst_alg < 1e-12
    verdict(7, "endpoint limits follow the boundary transition formulas",
            ok, f"compatible-data residual {worst_alg:.2e}")


def test_08_equiconvergence_deficit():
    sb = SpectralBasis(PERIODIC_PLUS)
    v = PotentialSpec(Entry.step(0.6, -0.3), Entry.constant(0.4),
                      smoothness="BV")
    M = 192
    rep = matrix_rep(sb, v, 2 * M + 8)
    op = build_truncated(sb, rep, M)
    F = VectorFunction(lambda x: np.where(x < math.pi / 2, 1.0 + 0j, 0j),
                       lambda x: Entry.sawtooth(1.0)(x),
                       (Jump(math.pi / 2, (1.0, 0.5), (0.0, 0.5)),))
    rpt = equiconv_deficit(sb, op, F, [8, 16, 32, 64, 128],
                           np.linspace(0.0, math.pi, 81))
    ok = rpt.passed and rpt.deficits[-1] <= rpt.deficits[0] / 4.0
    verdict(8, "perturbed and unperturbed partial sums equiconverge",
            ok, "deficits " + ", ".join(f"{d:.2e}" for d in rpt.deficits))


def test_09_weighted_problem_vs_shooting_oracle():
    bc = BoundaryCondition(1, 0, 0, 1)
    rho = lambda x: 1.0 + x
    T = ((0.2, 0.4), (0.4, -0.1))
    prob = WeightedProblem(0.0, 1.0, rho, T, bc)
    md, gd = reduce_problem(prob)
    sb = SpectralBasis(gd.bc_t)
    M = 32
    rep = matrix_rep(sb, gd.v, 2 * M + 8)
    eigs = spectrum(build_truncated(sb, rep, M))
    margin = max(8.0, M / 8.0)
    lam = md.K * eigs[np.abs(eigs.real) <= M - margin]
    lam = lam[np.argsort(np.abs(lam))][:10]
    Tc = tuple(tuple((lambda x, c=c: np.full_like(np.asarray(x, float), c,
                                                  dtype=complex))
                     for c in row) for row in T)
    worst = 0.0
    for l0 in lam:
        true = oracles.weighted_eigen_oracle(bc, rho, Tc, 0.0, 1.0, [l0],
                                             steps=1500)[0]
        worst = max(worst, abs(true - l0))
    sides = (0.3 - 0.1j, 0.7, -0.2j, 1.1)
    d0, dpi = endpoint_limits_general(prob, sides)
    g0, gpi = gauge_endpoint_limits(prob, sides)
    dual = float(max(np.max(np.abs(d0 - g0)), np.max(np.abs(dpi - gpi))))
    ok = worst < 1e-5 and dual < 1e-10
    verdict(9, "weighted-problem spectrum matches the shooting oracle",
            ok, f"10 eigenvalues, max error {worst:.2e}, dual-path {dual:.2e}")


def test_10_selfadjoint_real_spectrum_and_limits():
    # free separated case: an explicit half-integer ladder
    free = sa_spectrum(SeparatedSelfAdjointBC(math.pi / 2, 0.0),
                       RealDiracProblem(((0.0, 0.0), (0.0, 0.0))), 32)
    ladder = float(np.max(np.abs(free.eigs - (np.round(free.eigs - 0.5) + 0.5))))
    ok = free.ok and ladder < 1e-10

    # weighted problem with a symmetric potential: real, interval-localized
    T = ((lambda x: 0.3 * np.cos(x), lambda x: 0.2 + 0.1 * x),
         (lambda x: 0.2 + 0.1 * x, lambda x: -0.25 * np.sin(x)))
    sabc = SeparatedSelfAdjointBC(0.9, 0.2, 0.0, 2.0)
    rpt = sa_spectrum(sabc, RealDiracProblem(T, rho=lambda x: 1.0 + 0.3 * x), 32)
    far = np.abs(rpt.indices) > (rpt.N_found if rpt.N_found is not None else 10 ** 9)
    ok = ok and rpt.ok and rpt.max_imag < 1e-8 and bool(rpt.in_interval[far].all())
    ok = ok and rpt.central_count == 2 * rpt.N_found + 1

    # endpoint projections at alpha in {0, pi/4}
    p0 = sa_endpoint_limit(0.0, 0.7, -0.3)
    p4 = sa_endpoint_limit(math.pi / 4, 1.0, 0.0)
    ok = ok and abs(p0[0]) < 1e-14 and abs(p0[1] + 0.3) < 1e-14
    ok = ok and np.max(np.abs(p4 - [0.5, -0.5])) < 1e-14
    exp = sa_expand(SeparatedSelfAdjointBC(math.pi / 4, 0.0),
                    RealDiracProblem(((0.2, 0.1), (0.1, -0.2))),
                    lambda x: np.sin(x), lambda x: np.cos(2 * x),
                    [0.0, math.pi], [8, 16, 32])
    ok = ok and bool(np.all(exp.errors[:, -1] < exp.errors[:, 0]))
    verdict(10, "separated self-adjoint problems: real ladder and limits",
            ok, f"ladder residual {ladder:.2e}, max imag {rpt.max_imag:.2e}")


def test_11_hilbert_weights_and_multiplier():
    rng = _rng()
    ks = np.arange(-20, 21, 2)
    h = hilbert(ks, (ks == 0).astype(complex))
    delta_exact = all(abs(h[i] - (0.0 if n == 0 else 1.0 / n)) < 1e-15
                      for i, n in enumerate(ks))

    ns = [4, 16, 64, 256, 1024]
    stable = True
    for w in [WeightSeq("sobolev", 0.1), WeightSeq("sobolev", 0.25),
              WeightSeq("sobolev", 0.4), WeightSeq("log", 1.0),
              WeightSeq("log", 2.0)]:
        run = muckenhoupt_running(w, ns)
        stable = stable and run[-1] / run[-2] < 1.2
    grow = muckenhoupt_running(WeightSeq("sobolev", 0.75), ns)
    grows = grow[-1] / grow[0] > 3.0

    omega = WeightSeq("log", 1.0)
    g = lambda x: 0.5 * x + 0.3 * np.sin(2 * x)
    worst = 0.0
    for _ in range(20):
        fhat = rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)
        res = multiply_in_weighted_space(ks, fhat, g, omega, K_g=8)
        K_out = int(np.max(np.abs(res["ks"])))
        direct = fourier_coeffs(
            lambda x: (fhat @ np.exp(1j * np.outer(ks.astype(float), x))) * g(x),
            K_out, nodes=4 * K_out + 64)
        worst = max(worst, max(abs(res["coeffs"][i] - direct[int(k)])
                               for i, k in enumerate(res["ks"])))
    ok = delta_exact and stable and grows and worst < 1e-8
    verdict(11, "discrete transform, weight admissibility and multiplier",
            ok, f"multiplier residual {worst:.2e}")
