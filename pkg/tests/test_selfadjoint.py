import math

import numpy as np
import pytest

from dirac_spectra import (
    RealDiracProblem,
    SeparatedSelfAdjointBC,
    is_selfadjoint,
    real_to_complex,
    realness_rotation,
    sa_endpoint_limit,
    sa_expand,
    sa_spectrum,
)

ZERO_T = ((0.0, 0.0), (0.0, 0.0))


def test_bc_construction_and_guard():
    sabc = SeparatedSelfAdjointBC(math.pi / 2, 0.0)
    assert abs(sabc.bc.a + 1.0) < 1e-12 and abs(sabc.bc.d - 1.0) < 1e-12
    with pytest.raises(ValueError):
        SeparatedSelfAdjointBC(0.3, 0.3 + math.pi)
    with pytest.raises(ValueError):
        SeparatedSelfAdjointBC(0.1, 0.2, 1.0, 0.5)


def test_real_to_complex_structure():
    # any real T gives the conjugate-pair structure across the branches
    T = ((lambda x: 0.3 * x, 0.2), (lambda x: -0.1 * np.cos(x), 0.4))
    D = real_to_complex(T)
    x = np.linspace(0.0, math.pi, 33)
    assert np.max(np.abs(D[0][0](x) - np.conj(D[1][1](x)))) < 1e-12
    assert np.max(np.abs(D[0][1](x) - np.conj(D[1][0](x)))) < 1e-12
    # a symmetric real T maps to a pointwise hermitian potential, making the
    # separated problem genuinely self-adjoint
    Ts = ((lambda x: 0.3 * x, lambda x: -0.1 * np.cos(x)),
          (lambda x: -0.1 * np.cos(x), 0.4))
    Ds = real_to_complex(Ts)
    assert is_selfadjoint(SeparatedSelfAdjointBC(0.7, 0.0).bc, Ds)
    assert not is_selfadjoint(SeparatedSelfAdjointBC(0.7, 0.0).bc, D)


def test_free_case_half_integer_spectrum():
    sabc = SeparatedSelfAdjointBC(math.pi / 2, 0.0)
    prob = RealDiracProblem(ZERO_T)
    rpt = sa_spectrum(sabc, prob, 32)
    assert rpt.ok
    assert rpt.max_imag < 1e-10
    want = np.round(rpt.eigs - 0.5) + 0.5
    assert np.max(np.abs(rpt.eigs - want)) < 1e-10


def test_weighted_random_T_spectrum_is_real_and_localized(rng):
    a = 0.4 * rng.standard_normal(3)
    T = ((lambda x: a[0] * np.cos(x), lambda x: a[1] + 0.2 * x),
         (lambda x: a[1] + 0.2 * x, lambda x: a[2] * np.sin(x)))
    sabc = SeparatedSelfAdjointBC(0.9, 0.2, 0.0, 2.0)
    prob = RealDiracProblem(T, rho=lambda x: 1.0 + 0.3 * x)
    rpt = sa_spectrum(sabc, prob, 32)
    assert rpt.ok
    assert rpt.max_imag < 1e-8
    # away from the center every quarter-width interval holds one eigenvalue
    far = np.abs(rpt.indices) > rpt.N_found
    assert rpt.in_interval[far].all()
    assert rpt.central_count == 2 * rpt.N_found + 1


def test_endpoint_limit_formulas():
    # alpha = 0: the first component is annihilated at the endpoint
    v = sa_endpoint_limit(0.0, 0.7, -0.3)
    assert abs(v[0]) < 1e-14 and abs(v[1] + 0.3) < 1e-14
    # alpha = pi/2: the second component is annihilated
    v = sa_endpoint_limit(math.pi / 2, 0.7, -0.3)
    assert abs(v[0] - 0.7) < 1e-14 and abs(v[1]) < 1e-14
    # alpha = pi/4 projects onto the difference direction
    v = sa_endpoint_limit(math.pi / 4, 1.0, 0.0)
    assert np.max(np.abs(v - np.array([0.5, -0.5]))) < 1e-14


def test_sa_expand_converges_to_limits():
    sabc = SeparatedSelfAdjointBC(math.pi / 4, 0.0)
    prob = RealDiracProblem(((0.2, 0.1), (0.1, -0.2)))
    f = lambda x: np.sin(x)
    g = lambda x: np.cos(2 * x)
    rpt = sa_expand(sabc, prob, f, g, [0.0, 1.3, math.pi], [8, 16, 32])
    assert rpt.max_imag < 1e-8
    assert np.all(rpt.errors[:, -1] < rpt.errors[:, 0])
    # the x = 0 limit is the alpha1 projection of the boundary data
    assert np.max(np.abs(rpt.limits[0] -
                         sa_endpoint_limit(math.pi / 4, 0.0, 1.0))) < 1e-12


def test_realness_rotation():
    x = np.linspace(0.0, math.pi, 65)
    phi = np.exp(1j * x) * (1.0 + 0.3 * np.sin(x))
    theta = 0.7
    y1 = np.exp(-1j * theta) * phi
    y2 = np.exp(-1j * theta) * np.conj(phi)
    et, defect = realness_rotation(y1, y2)
    assert defect < 1e-12
    assert abs(abs(et) - 1.0) < 1e-14
