import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from squeezed_husimi.oracle import normalization_2d
from squeezed_husimi.phase_space import (
    DistributionSample,
    Flag,
    Kind,
    PhasePoint,
    SqueezeFrame,
    husimi_fock,
    husimi_fock_laguerre,
    husimi_fock_series,
    husimi_sum_over_n,
    husimi_unsqueezed,
    rotate,
)

coords = st.floats(-15, 15)
angles = st.floats(0, 2 * math.pi, exclude_max=True)
log_lams = st.floats(math.log(1 / 201), math.log(201))


def overlap_squared(n, p, q, lam):
    """|<n|p,q;lam>|^2 at phi = 0 from position-space wavefunctions."""
    fock = [
        lambda x: math.pi**-0.25 * math.exp(-x * x / 2),
        lambda x: math.pi**-0.25 * math.sqrt(2) * x * math.exp(-x * x / 2),
    ][n]

    def part(trig):
        f = lambda x: fock(x) * (lam / math.pi) ** 0.25 * math.exp(-lam * (x - q) ** 2 / 2) * trig(p * x)
        return integrate.quad(f, -30, 30, epsabs=1e-14, limit=200)[0]

    return part(math.cos) ** 2 + part(math.sin) ** 2


class TestFrame:
    def test_rejects_nonpositive_lambda(self):
        for bad in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                SqueezeFrame(bad, 0.0)

    def test_cached_trig(self):
        fr = SqueezeFrame(3.0, 1.234)
        assert fr.cos2 + fr.sin2 == pytest.approx(1.0, abs=2.3e-16)
        assert fr.sin_phi == math.sin(1.234)

    def test_degrees_and_reciprocal(self):
        fr = SqueezeFrame.from_degrees(4.0, 90.0)
        assert fr.phi == pytest.approx(math.pi / 2)
        assert fr.phi_deg == pytest.approx(90.0)
        assert fr.reciprocal() == SqueezeFrame(0.25, -fr.phi)

    def test_point_must_be_finite(self):
        with pytest.raises(ValueError):
            PhasePoint(math.inf, 0.0)


class TestRotate:
    def test_identity(self):
        rp = rotate(PhasePoint(1, 2), SqueezeFrame(2, 0))
        assert (rp.p_r, rp.q_r) == (1, 2)

    def test_half_turn(self):
        rp = rotate(PhasePoint(1, 0), SqueezeFrame(2, math.pi))
        assert rp.p_r == pytest.approx(0, abs=1e-16)
        assert rp.q_r == pytest.approx(1)

    @given(coords, coords, angles)
    def test_isometry(self, p, q, phi):
        rp = rotate(PhasePoint(p, q), SqueezeFrame(1.0, phi))
        r2 = p * p + q * q
        assert rp.p_r**2 + rp.q_r**2 == pytest.approx(r2, rel=1e-12, abs=1e-300)


class TestUnsqueezed:
    @pytest.mark.parametrize("n, p, q, expected", [(0, 0, 0, 1.0), (2, 0, 0, 0.0), (1, 1, 1, math.exp(-1))])
    def test_examples(self, n, p, q, expected):
        assert husimi_unsqueezed(n, PhasePoint(p, q)) == pytest.approx(expected, rel=1e-15)

    def test_normalization_quadrature(self):
        total = integrate.dblquad(
            lambda p, q: husimi_unsqueezed(1, PhasePoint(p, q)) / (2 * math.pi), -12, 12, -12, 12
        )[0]
        assert total == pytest.approx(1.0, abs=1e-10)

    def test_negative_n(self):
        with pytest.raises(ValueError):
            husimi_unsqueezed(-1, PhasePoint(0, 0))


class TestHusimiFock:
    def test_vacuum_at_origin(self):
        s = husimi_fock(0, PhasePoint(0, 0), SqueezeFrame(1, 0))
        assert s.value == 1.0
        assert s.kind is Kind.HUSIMI

    @pytest.mark.parametrize("lam, phi", [(2.0, 0.0), (21.0, 1.3), (201.0, 4.0)])
    def test_first_excited_vanishes_at_origin(self, lam, phi):
        assert husimi_fock(1, PhasePoint(0, 0), SqueezeFrame(lam, phi)).value == 0.0

    def test_squeezed_vacuum_example(self):
        value = husimi_fock(0, PhasePoint(0, 1), SqueezeFrame(4, 0)).value
        assert value == pytest.approx(0.8 * math.exp(-0.8), rel=1e-14)
        assert value == pytest.approx(0.359463, abs=5e-7)
        assert value == pytest.approx(overlap_squared(0, 0.0, 1.0, 4.0), rel=1e-12)

    @pytest.mark.parametrize("n, p, q, lam", [(1, 0.3, 1.2, 4.0), (1, -0.7, 0.5, 0.3), (0, 1.1, -0.4, 9.0)])
    def test_against_wavefunction_overlap(self, n, p, q, lam):
        value = husimi_fock(n, PhasePoint(p, q), SqueezeFrame(lam, 0.0)).value
        assert value == pytest.approx(overlap_squared(n, p, q, lam), rel=1e-11)

    def test_flags(self):
        assert husimi_fock(2, PhasePoint(1, 1), SqueezeFrame(3, 0.2)).flags == frozenset()
        assert Flag.RECIPROCAL_SYMMETRY in husimi_fock(2, PhasePoint(1, 1), SqueezeFrame(0.3, 0.2)).flags
        assert Flag.SINGULAR_FALLBACK in husimi_fock(2, PhasePoint(1, 1), SqueezeFrame(1 + 1e-8, 0.2)).flags

    def test_large_n_large_lambda_finite(self):
        v = husimi_fock(200, PhasePoint(0.0, 7 * math.sqrt(2)), SqueezeFrame(201, 0.0)).value
        assert 0.0 < v < 1.0

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 250), coords, coords, angles, st.sampled_from([1 / 201, 1 / 21, 1.0, 21.0, 201.0]))
    def test_positive(self, n, p, q, phi, lam):
        assert husimi_fock(n, PhasePoint(p, q), SqueezeFrame(lam, phi)).value >= 0.0

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 50), coords, coords, angles, log_lams)
    def test_forms_agree(self, n, p, q, phi, log_lam):
        fr = SqueezeFrame(math.exp(log_lam), phi)
        pt = PhasePoint(p, q)
        a = husimi_fock(n, pt, fr).value
        b = husimi_fock_laguerre(n, pt, fr)
        if a < 1e-290 and abs(b) < 1e-290:
            return
        assert b == pytest.approx(a, rel=1e-10)

    @pytest.mark.parametrize(
        "n, p, q, lam, phi", [(0, 0.4, -0.2, 2.0, 0.0), (3, 1.0, 2.0, 21.0, 0.0), (5, 0.5, 0.5, 0.3, 1.1)]
    )
    def test_laguerre_examples(self, n, p, q, lam, phi):
        pt, fr = PhasePoint(p, q), SqueezeFrame(lam, phi)
        assert husimi_fock_laguerre(n, pt, fr) == pytest.approx(husimi_fock(n, pt, fr).value, rel=1e-10)

    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, 40), coords, coords, angles, log_lams)
    def test_symmetries(self, n, p, q, phi, log_lam):
        lam = math.exp(log_lam)
        a = husimi_fock(n, PhasePoint(p, q), SqueezeFrame(lam, phi)).value
        b = husimi_fock(n, PhasePoint(q, -p), SqueezeFrame(lam, phi + math.pi)).value
        c = husimi_fock(n, PhasePoint(q, -p), SqueezeFrame(lam, phi - math.pi)).value
        d = husimi_fock(n, PhasePoint(q, p), SqueezeFrame(1 / lam, -phi)).value
        if a < 1e-290:
            return
        for other in (b, c, d):
            assert other == pytest.approx(a, rel=1e-10)

    @pytest.mark.parametrize("side", [1 + 1e-6, 1 - 1e-6])
    def test_continuity_at_unit_lambda(self, side):
        fr = SqueezeFrame(side, 0.9)
        for n in range(21):
            for p, q in ((0.3, -1.2), (2.0, 1.5)):
                pt = PhasePoint(p, q)
                rp = rotate(pt, fr)
                ref = husimi_unsqueezed(n, PhasePoint(rp.p_r, rp.q_r))
                assert abs(husimi_fock(n, pt, fr).value - ref) <= 1e-4

    @pytest.mark.parametrize("n", [0, 1, 3, 6, 10])
    def test_normalization_2d(self, n):
        assert normalization_2d(n, SqueezeFrame(3.0, 0.8)) == pytest.approx(1.0, abs=1e-6)


class TestSeries:
    def test_matches_pointwise(self):
        fr = SqueezeFrame(21.0, 0.7)
        p = np.array([0.0, 1.5, -3.0])
        q = np.array([9.9, -0.4, 2.2])
        series = husimi_fock_series(60, p, q, fr)
        assert series.shape == (61, 3)
        for n in (0, 17, 60):
            for i in range(3):
                ref = husimi_fock(n, PhasePoint(p[i], q[i]), fr).value
                assert series[n, i] == pytest.approx(ref, rel=1e-10)

    def test_below_one(self):
        fr = SqueezeFrame(0.05, 2.0)
        series = husimi_fock_series(100, 1.0, -2.0, fr)
        for n in (0, 50, 100):
            assert series[n] == pytest.approx(husimi_fock(n, PhasePoint(1.0, -2.0), fr).value, rel=1e-10)

    def test_sum_examples(self):
        assert husimi_sum_over_n(PhasePoint(0, 0), SqueezeFrame(1, 0), 0) == 1.0
        s = husimi_sum_over_n(PhasePoint(0, 7 * math.sqrt(2)), SqueezeFrame(21, 0), 400)
        assert s == pytest.approx(1.0, abs=1e-8)
        s = husimi_sum_over_n(PhasePoint(1, 1), SqueezeFrame(201, math.pi / 2), 2000)
        assert s == pytest.approx(1.0, abs=1e-6)

    def test_partial_sums_monotone(self):
        series = husimi_fock_series(300, 2.0, -1.0, SqueezeFrame(50, 1.0))
        assert np.all(np.diff(np.cumsum(series)) >= 0)


class TestSample:
    def test_to_dict_and_flags(self):
        s = DistributionSample(
            Kind.HUSIMI, 2, SqueezeFrame(2, 0), PhasePoint(1, 2), 0.5,
            frozenset({Flag.TRUNCATED_SERIES, Flag.SINGULAR_FALLBACK}),
        )
        assert s.flag_string() == "SingularFallback|TruncatedSeries"
        d = s.to_dict()
        assert d["kind"] == "Husimi" and d["value"] == 0.5 and float(s) == 0.5
