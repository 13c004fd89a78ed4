import math

import numpy as np
import pytest

from dirac_spectra import (
    WeightSeq,
    fourier_coeffs,
    muckenhoupt_running,
    muckenhoupt_sup,
    multiply_in_weighted_space,
    weighted_norm,
)
from dirac_spectra.hilbert import hilbert


def test_hilbert_of_delta_is_exact():
    ks = np.arange(-20, 21, 2)
    xi = (ks == 0).astype(complex)
    h = hilbert(ks, xi)
    for i, n in enumerate(ks):
        want = 0.0 if n == 0 else 1.0 / n
        assert abs(h[i] - want) < 1e-15


def test_hilbert_kernel_antisymmetric(rng):
    ks = np.arange(-16, 17, 2)
    x = rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)
    y = rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)
    lhs = np.sum(hilbert(ks, x) * np.conj(y))
    rhs = -np.sum(x * np.conj(hilbert(ks, y)))
    assert abs(lhs - rhs) < 1e-10


def test_hilbert_rejects_odd_lattice():
    with pytest.raises(ValueError):
        hilbert(np.array([0, 1]), np.array([1.0, 0.0]))


def test_weight_axioms():
    for w in (WeightSeq("sobolev", 0.25), WeightSeq("log", 1.0)):
        rpt = w.axioms_report()
        assert rpt["omega0_ge_1"] and rpt["nondecreasing"]
        assert rpt["doubling_C"] < 10.0
    # growth beyond the square root shows in the fitted constant
    fast = WeightSeq("sobolev", 0.75).axioms_report(k_max=10000)
    slow = WeightSeq("sobolev", 0.25).axioms_report(k_max=10000)
    assert fast["growth_C"] > 5 * slow["growth_C"]


def test_weight_json():
    w = WeightSeq.from_json({"kind": "sobolev", "alpha": 0.3})
    assert abs(w(np.array([3]))[0] - 4.0 ** 0.3) < 1e-14
    with pytest.raises(ValueError):
        WeightSeq.from_json({"kind": "nope"})


def test_muckenhoupt_admissible_vs_not():
    ns = [4, 16, 64, 256, 1024]
    ok = muckenhoupt_running(WeightSeq("sobolev", 0.4), ns)
    bad = muckenhoupt_running(WeightSeq("sobolev", 0.75), ns)
    # admissible: the running sup stabilizes; inadmissible: it keeps growing
    assert ok[-1] / ok[-2] < 1.2
    assert bad[-1] / bad[-3] > 2.0
    assert muckenhoupt_sup(WeightSeq("log", 1.0), range(-8, 9), [4, 8]) < 4.0


def test_weighted_norm():
    ks = np.array([-2, 0, 2])
    xi = np.array([0.0, 3.0, 4.0])
    w = WeightSeq("sobolev", 0.0)   # unweighted
    assert abs(weighted_norm(ks, xi, w) - 5.0) < 1e-14


def test_multiplier_matches_direct_fourier(rng):
    """Coefficient-side multiplication by a C^1 function (ramp + smooth
    periodic part) agrees with quadrature Fourier coefficients of f*g."""
    omega = WeightSeq("log", 1.0)
    ks = np.arange(-8, 9, 2)
    g = lambda x: 0.5 * x + 0.3 * np.sin(2 * x)
    for _ in range(5):
        fhat = rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)
        res = multiply_in_weighted_space(ks, fhat, g, omega, K_g=8)

        def fg(x):
            f = fhat @ np.exp(1j * np.outer(ks.astype(float), x))
            return f * g(x)

        K_out = int(np.max(np.abs(res["ks"])))
        direct = fourier_coeffs(fg, K_out, nodes=4 * K_out + 64)
        for i, k in enumerate(res["ks"]):
            assert abs(res["coeffs"][i] - direct[int(k)]) < 1e-10
