import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squeezed_husimi.correlation import (
    CorrelationParams,
    corr_c1,
    corr_c2,
    corr_c3,
    corr_c3_series,
    corr_params,
    corr_total,
)
from squeezed_husimi.errors import ConvergenceDomain
from squeezed_husimi.correlation import _check_domain
from squeezed_husimi.marginals import marginal_p, marginal_q
from squeezed_husimi.oracle import corr_c3_quadrature
from squeezed_husimi.phase_space import PhasePoint, SqueezeFrame, husimi_fock

coords = st.floats(-6, 6)
angles = st.floats(0, 2 * math.pi, exclude_max=True)
log_lams = st.floats(math.log(1 / 201), math.log(201))


class TestParams:
    @given(angles)
    def test_unit_lambda(self, phi):
        cp = corr_params(SqueezeFrame(1, phi))
        assert cp.alpha1**2 == pytest.approx(0.5)
        assert cp.alpha2**2 == pytest.approx(0.5)
        assert cp.alpha3 == 0.0

    def test_unrotated_example(self):
        cp = corr_params(SqueezeFrame(4, 0))
        assert cp.alpha1**2 == pytest.approx(4 / 5, rel=1e-15)
        assert cp.alpha2**2 == pytest.approx(1 / 5, rel=1e-15)
        assert cp.alpha3 == 0.0

    def test_large_lambda_example(self):
        phi = math.radians(85)
        cp = corr_params(SqueezeFrame(201, phi))
        assert cp.alpha3 == pytest.approx((201**2 - 1) / 804 * math.sin(phi), rel=1e-15)

    @given(log_lams, angles)
    def test_width_relation(self, log_lam, phi):
        lam = math.exp(log_lam)
        cp = corr_params(SqueezeFrame(lam, phi))
        assert 1 / cp.alpha1**2 + 1 / cp.alpha2**2 == pytest.approx((lam + 1) ** 2 / lam, rel=1e-12)

    @given(log_lams, angles)
    def test_coupling_below_one(self, log_lam, phi):
        assert abs(corr_params(SqueezeFrame(math.exp(log_lam), phi)).coupling) < 1.0

    def test_domain_guard(self):
        with pytest.raises(ConvergenceDomain):
            _check_domain(CorrelationParams(1.0, 1.0, 0.5))


class TestTotal:
    @given(coords, coords)
    def test_vacuum_factorizes(self, p, q):
        assert corr_total(0, PhasePoint(p, q), SqueezeFrame(1, 0)).value == pytest.approx(0.0, abs=1e-15)

    def test_first_excited_example(self):
        # e^{-1} (p^2 + q^2)/2 ... at (1, 1): P = e^{-1}, Q(1) = R(1) = e^{-1/2}
        value = corr_total(1, PhasePoint(1, 1), SqueezeFrame(1, 0)).value
        expected = math.exp(-1) - (0.5 * math.exp(-0.5) * 2) ** 2
        assert value == pytest.approx(expected, abs=1e-15)

    def test_sign_changes_across_n(self):
        fr = SqueezeFrame.from_degrees(201, 85)
        r = 7 * math.sqrt(2)
        theta = math.radians(1.5 * 85)
        pt = PhasePoint(r * math.sin(theta), r * math.cos(theta))
        values = [corr_total(n, pt, fr).value for n in range(201)]
        changes = sum(1 for a, b in zip(values, values[1:]) if a * b < 0)
        assert changes >= 10


class TestC3:
    @given(log_lams, coords, coords, st.integers(0, 8))
    def test_unrotated_is_marginal_product(self, log_lam, p, q, n):
        fr = SqueezeFrame(math.exp(log_lam), 0.0)
        expected = marginal_q(n, q, fr).value * marginal_p(n, p, fr).value
        assert corr_c3(n, PhasePoint(p, q), fr).value == pytest.approx(expected, rel=1e-14, abs=1e-300)

    def test_example_vacuum(self):
        fr = SqueezeFrame(4, 0)
        expected = marginal_q(0, 1, fr).value * marginal_p(0, 1, fr).value
        assert corr_c3(0, PhasePoint(1, 1), fr).value == pytest.approx(expected, rel=1e-15)

    @pytest.mark.parametrize(
        "n, p, q, lam, phi",
        [(2, 0.5, 0.5, 2.0, math.pi / 4), (1, 0.3, -0.6, 2.0, math.pi / 4), (3, -1.0, 0.4, 5.0, 1.1), (4, 0.2, 1.0, 0.4, 2.5)],
    )
    def test_against_quadrature(self, n, p, q, lam, phi):
        pt, fr = PhasePoint(p, q), SqueezeFrame(lam, phi)
        assert corr_c3(n, pt, fr).value == pytest.approx(corr_c3_quadrature(n, pt, fr), abs=1e-6)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 4), coords, coords, st.floats(math.log(0.2), math.log(5)), angles)
    def test_closed_form_matches_series(self, n, p, q, log_lam, phi):
        pt, fr = PhasePoint(p, q), SqueezeFrame(math.exp(log_lam), phi)
        a = corr_c3(n, pt, fr).value
        b = corr_c3_series(n, pt, fr).value
        assert b == pytest.approx(a, rel=1e-8, abs=1e-12)

    @pytest.mark.parametrize(
        "n, p, q, lam, phi, expected",
        [
            # the same finite sum carried out at 80 significant digits
            (10, 2.0, -3.0, 150.0, 1.4, 0.028136747981073438),
            (30, 2.0, -3.0, 150.0, 1.4, 0.01741589931267622),
            (20, 7.0, -7.0, 201.0, math.radians(85), 0.019158756837290947),
        ],
    )
    def test_strong_coupling(self, n, p, q, lam, phi, expected):
        # |2 a1 a2 a3| ~ 0.99: the sum cancels by many digits
        assert corr_c3(n, PhasePoint(p, q), SqueezeFrame(lam, phi)).value == pytest.approx(expected, rel=1e-12)

    def test_series_refuses_overflow(self):
        from squeezed_husimi.errors import NoConvergence

        with pytest.raises(NoConvergence):
            corr_c3_series(30, PhasePoint(2.0, -3.0), SqueezeFrame(150.0, 1.4))


class TestDecomposition:
    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 20), coords, coords, log_lams, angles)
    def test_closure(self, n, p, q, log_lam, phi):
        pt, fr = PhasePoint(p, q), SqueezeFrame(math.exp(log_lam), phi)
        c = corr_total(n, pt, fr).value
        c1 = corr_c1(n, pt, fr).value
        c2 = corr_c2(n, pt, fr).value
        assert abs(c1 + c2 - c) <= 1e-10

    @given(st.integers(0, 20), coords, coords, log_lams)
    def test_unrotated(self, n, p, q, log_lam):
        pt, fr = PhasePoint(p, q), SqueezeFrame(math.exp(log_lam), 0.0)
        assert corr_c2(n, pt, fr).value == 0.0
        assert corr_c1(n, pt, fr).value == pytest.approx(corr_total(n, pt, fr).value, rel=1e-12, abs=1e-15)

    @given(st.integers(0, 20), coords, coords, angles)
    def test_unit_lambda(self, n, p, q, phi):
        assert corr_c2(n, PhasePoint(p, q), SqueezeFrame(1.0, phi)).value == 0.0

    def test_c1_vacuum_unsqueezed(self):
        assert corr_c1(0, PhasePoint(0.4, -1.2), SqueezeFrame(1, 0)).value == pytest.approx(0.0, abs=1e-15)

    def test_component_examples(self):
        pt, fr = PhasePoint(1, 2), SqueezeFrame(3, 0.5)
        expected = husimi_fock(3, pt, fr).value - corr_c3(3, pt, fr).value
        assert corr_c1(3, pt, fr).value == expected
        pt, fr = PhasePoint(1, 1), SqueezeFrame(4, math.pi / 3)
        expected = corr_c3(2, pt, fr).value - marginal_q(2, 1, fr).value * marginal_p(2, 1, fr).value
        assert corr_c2(2, pt, fr).value == expected
