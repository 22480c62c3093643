"""Airy evaluation: frozen references, regime consistency, zeros."""

import math

import numpy as np
import pytest

from qbounce import _airy_py
from qbounce import airy as airy_mod
from qbounce.airy import airy_ai, airy_ai_and_prime, airy_ai_prime, airy_zero, airy_zeros

try:
    from qbounce import _airy_cy
    BACKENDS = [_airy_py, _airy_cy]
except ImportError:
    _airy_cy = None
    BACKENDS = [_airy_py]

backend = pytest.fixture(params=BACKENDS, ids=lambda b: b.BACKEND)(lambda request: request.param)

AIRY_REFERENCE = [
    # (x, Ai(x), Ai'(x))  fifty-digit evaluation, tools/gen_airy_reference.py
    (-60.25, -0.20243588317783093, 0.04020996656002661),
    (-35.0, 0.13033638994602217, -1.1342272299930087),
    (-20.5, -0.04462568039701191, -1.1839330197051474),
    (-12.75, -0.08300903494603806, -1.0257421605284418),
    (-9.5, 0.3191032477191282, -0.10809531881187123),
    (-8.7, -0.2692045407005097, -0.562976849501853),
    (-8.5, -0.33029023763020887, -0.03231334828463914),
    (-8.3, -0.282231759958831, 0.4972767902532079),
    (-7.0, 0.18428083525050565, -0.7710081684101265),
    (-5.5, 0.017781541276574976, 0.8641972177713984),
    (-4.2, 0.08921076323945072, -0.7822156078624519),
    (-1.0, 0.5355608832923521, -0.01016056711664521),
    (-0.3, 0.43090309528558085, -0.2405451272581546),
    (0.0, 0.3550280538878172, -0.2588194037928068),
    (0.5, 0.23169360648083348, -0.2249105326646839),
    (1.0, 0.13529241631288141, -0.1591474412967932),
    (2.5, 0.01572592338047049, -0.026250881035903232),
    (5.0, 0.00010834442813607442, -0.0002474138908684625),
    (7.5, 1.9172560675134309e-07, -5.312713959720545e-07),
    (8.3, 1.974861749667689e-08, -5.7475397363379974e-08),
    (8.5, 1.0997009755195506e-08, -3.237725440447602e-08),
    (8.7, 6.082608218774557e-09, -1.811187604617616e-08),
    (10.0, 1.1047532552898686e-10, -3.5206336767389237e-10),
    (14.5, 1.489537454965927e-17, -5.697388206185781e-17),
]


def bisect_root(f, lo, hi, iters=200):
    flo = f(lo)
    assert flo * f(hi) < 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


class TestReferenceValues:
    def test_reference_table(self, backend):
        for x, ai_ref, aip_ref in AIRY_REFERENCE:
            ai, aip = backend.ai_and_prime(x)
            assert ai == pytest.approx(ai_ref, rel=1e-10, abs=1e-280)
            assert aip == pytest.approx(aip_ref, rel=1e-10, abs=1e-280)

    def test_value_at_origin_against_closed_form(self, backend):
        # Ai(0) = 3**(-2/3)/Gamma(2/3); the series reduces to this single term
        expected = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
        assert backend.ai(0.0) == pytest.approx(expected, rel=1e-12)
        assert backend.ai(0.0) == pytest.approx(0.3550280539, abs=1e-10)

    def test_near_first_zero(self, backend):
        assert abs(backend.ai(-2.33811)) <= 1e-5

    def test_monotone_decay_positive_axis(self, backend):
        a1, a5, a10 = backend.ai(1.0), backend.ai(5.0), backend.ai(10.0)
        assert 0 < a10 < a5 < a1

    def test_array_shape_and_scalar(self, backend):
        xs = np.array([[0.0, 1.0], [-1.0, 2.0]])
        out = backend.ai(xs)
        assert out.shape == xs.shape
        assert isinstance(backend.ai(1.0), float)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf"),
                                     200.5, -1000.0])
    def test_domain_errors(self, backend, bad):
        with pytest.raises(ValueError):
            backend.ai(bad)
        with pytest.raises(ValueError):
            backend.ai(np.array([0.0, bad]))


class TestRegimeConsistency:
    def test_series_vs_asymptotic_at_switch(self):
        # the design requirement for the switch point: both evaluation
        # regimes must agree to 1e-11 there (measured ~5e-15)
        for x in (8.2, 8.5, 8.8):
            s_ai, s_aip = _airy_py._series_both(np.array([x]))
            a_ai, a_aip = _airy_py._asym_pos_both(np.array([x]))
            assert s_ai[0] == pytest.approx(a_ai[0], rel=1e-11)
            assert s_aip[0] == pytest.approx(a_aip[0], rel=1e-11)
            s_ai, s_aip = _airy_py._series_both(np.array([-x]))
            a_ai, a_aip = _airy_py._asym_neg_both(np.array([-x]))
            assert s_ai[0] == pytest.approx(a_ai[0], abs=1e-11)
            assert s_aip[0] == pytest.approx(a_aip[0], abs=1e-11)

    def test_differential_equation_residual(self, backend):
        # Ai'' = x Ai, probed with 4th-order central differences in each
        # regime; also ties Ai' to Ai.  The step shrinks with |x| to keep
        # the h^4 Ai''''''(x) ~ h^4 |x|^3 truncation term below tolerance.
        for x0 in (-40.0, -12.0, -3.0, 0.0, 3.0, 6.0, 12.0, 20.0):
            h = 0.01 * min(1.0, (6.0 / max(1.0, abs(x0))) ** 1.5)
            stencil = np.array([-2.0, -1.0, 0.0, 1.0, 2.0]) * h
            ai = backend.ai(x0 + stencil)
            d2 = (-ai[0] + 16 * ai[1] - 30 * ai[2] + 16 * ai[3] - ai[4]) / (12 * h * h)
            scale = max(abs(v) for v in ai) + 1e-30
            assert d2 == pytest.approx(x0 * ai[2], abs=3e-6 * scale)
            d1 = (ai[0] - 8 * ai[1] + 8 * ai[3] - ai[4]) / (12 * h)
            assert d1 == pytest.approx(backend.ai_prime(x0), abs=1e-7 * scale)

    @pytest.mark.skipif(_airy_cy is None, reason="compiled core not built")
    def test_backends_agree(self):
        rng = np.random.default_rng(7)
        xs = np.concatenate([rng.uniform(-200.0, 200.0, 3000),
                             np.linspace(-9.0, 9.0, 500)])
        a1, p1 = _airy_py.ai_and_prime(xs)
        a2, p2 = _airy_cy.ai_and_prime(xs)
        np.testing.assert_allclose(a1, a2, rtol=5e-14, atol=1e-300)
        np.testing.assert_allclose(p1, p2, rtol=5e-14, atol=1e-300)

    def test_selected_backend_exposed(self):
        assert airy_mod.BACKEND in ("compiled", "python")
        assert airy_ai(0.5) == pytest.approx(0.23169360648083348, rel=1e-12)
        ai, aip = airy_ai_and_prime(0.5)
        assert ai == pytest.approx(airy_ai(0.5), rel=1e-15)
        assert aip == pytest.approx(airy_ai_prime(0.5), rel=1e-15)


class TestZeros:
    def test_first_zero_against_bisection(self):
        root = bisect_root(lambda lam: airy_ai(-lam), 2.0, 3.0)
        assert airy_zero(1) == pytest.approx(root, abs=1e-12)
        assert airy_zero(1) == pytest.approx(2.33811, abs=1e-5)

    def test_second_zero_against_bisection(self):
        root = bisect_root(lambda lam: airy_ai(-lam), 4.0, 4.5)
        assert airy_zero(2) == pytest.approx(root, abs=1e-12)
        assert airy_zero(2) == pytest.approx(4.08795, abs=1e-5)

    def test_residual_below_contract(self):
        lam = airy_zeros(100)
        assert np.max(np.abs(airy_ai(-lam))) <= 1e-10

    def test_zero_50_near_semiclassical_seed(self):
        seed = (3 * math.pi * 199 / 8) ** (2 / 3)
        assert abs(airy_zero(50) - seed) / seed <= 5e-4

    def test_bohr_sommerfeld_accuracy_and_trend(self):
        lam = airy_zeros(100)
        seeds = (3 * math.pi * (4 * np.arange(1, 101) - 1) / 8) ** (2 / 3)
        rel = np.abs(lam - seeds) / lam
        assert np.all(rel <= 0.008)
        assert np.all(np.diff(rel) < 1e-12)   # error shrinks with n

    def test_scalar_matches_vector(self):
        lam = airy_zeros(40)
        for n in (1, 7, 40):
            assert airy_zero(n) == pytest.approx(lam[n - 1], abs=1e-13)

    @pytest.mark.parametrize("bad", [0, -1, 2.5])
    def test_invalid_level(self, bad):
        with pytest.raises(ValueError):
            airy_zero(bad)
