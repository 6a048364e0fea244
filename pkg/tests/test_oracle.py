import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from squeezed_husimi.errors import DegenerateParameters, KernelNotIntegrable, NoConvergence
from squeezed_husimi.marginals import marginal_q
from squeezed_husimi.oracle import (
    Check,
    QuadratureSpec,
    _a7_sides,
    constrained_alpha,
    corr_c3_quadrature,
    envelope_half_width,
    identity_suite,
    integrate_1d,
    integrate_2d,
    integrate_2d_complex,
    normalization_2d,
    pde_residual_husimi,
    pde_residual_marginals,
    reconstruct_husimi,
    singular_distance,
)
from squeezed_husimi.correlation import corr_c3
from squeezed_husimi.phase_space import PhasePoint, SqueezeFrame, husimi_fock, husimi_unsqueezed


class TestQuadrature:
    def test_gaussian(self):
        value, err = integrate_1d(lambda x: math.exp(-x * x / 2) / math.sqrt(2 * math.pi), QuadratureSpec())
        assert value == pytest.approx(1.0, abs=1e-10)
        assert err < 1e-10

    def test_odd_function(self):
        spec = QuadratureSpec()
        assert abs(integrate_1d(lambda x: x**3 * math.exp(-x * x), spec)[0]) <= spec.abs_tol

    def test_marginal_slice(self):
        fr = SqueezeFrame(21, 0.7)
        f = lambda p: husimi_fock(3, PhasePoint(p, 2.0), fr).value / math.sqrt(2 * math.pi)
        value, _ = integrate_1d(f, QuadratureSpec(half_width=envelope_half_width(f)))
        assert value == pytest.approx(marginal_q(3, 2.0, fr).value, abs=1e-8)

    def test_2d_normalization(self):
        f = lambda q, p: husimi_unsqueezed(2, PhasePoint(p, q)) / (2 * math.pi)
        assert integrate_2d(f, QuadratureSpec(rel_tol=1e-10))[0] == pytest.approx(1.0, abs=1e-8)

    def test_2d_complex(self):
        f = lambda x, y: complex(math.exp(-x * x - y * y), x * math.exp(-x * x - y * y))
        value, _ = integrate_2d_complex(f, QuadratureSpec(half_width=8))
        assert value.real == pytest.approx(math.pi, rel=1e-10)
        assert abs(value.imag) <= 1e-12

    def test_no_convergence(self):
        spec = QuadratureSpec(half_width=50, rel_tol=1e-14, abs_tol=1e-16, max_subdivisions=2)
        with pytest.raises(NoConvergence):
            integrate_1d(lambda x: abs(math.sin(40 * x)) * math.cos(x) ** 2, spec)

    @pytest.mark.parametrize("kwargs", [{"half_width": 0}, {"rel_tol": 0}, {"max_subdivisions": 0}])
    def test_spec_validation(self, kwargs):
        with pytest.raises(ValueError):
            QuadratureSpec(**kwargs)

    def test_envelope_width(self):
        L = envelope_half_width(lambda x: math.exp(-x * x))
        assert math.exp(-L * L) < 1e-16
        assert L <= 7.0


class TestReconstruction:
    def test_unit_lambda_is_unsqueezed(self):
        pt = PhasePoint(0.6, -1.1)
        assert reconstruct_husimi(2, pt, 1.0, 0.3) == pytest.approx(husimi_unsqueezed(2, pt), abs=1e-8)

    @pytest.mark.parametrize("n, p, q, lam, phi", [(0, 0.3, 0.9, 4.0, 0.0), (2, -0.5, 1.0, 3.0, 1.0), (3, 1.0, 0.2, 0.5, 2.2)])
    def test_matches_closed_form(self, n, p, q, lam, phi):
        pt = PhasePoint(p, q)
        ref = husimi_fock(n, pt, SqueezeFrame(lam, phi)).value
        assert reconstruct_husimi(n, pt, lam, phi) == pytest.approx(ref, abs=1e-8)

    def test_negative_lambda_refused(self):
        with pytest.raises(KernelNotIntegrable):
            reconstruct_husimi(0, PhasePoint(0, 0), -2.0, 0.0)
        with pytest.raises(KernelNotIntegrable):
            corr_c3_quadrature(0, PhasePoint(0, 0), _FakeFrame(-2.0, 0.0))

    def test_c3_cross_check(self):
        pt, fr = PhasePoint(0.4, -0.3), SqueezeFrame(2, math.pi / 4)
        assert corr_c3_quadrature(1, pt, fr) == pytest.approx(corr_c3(1, pt, fr).value, abs=1e-6)

    def test_normalization(self):
        assert normalization_2d(2, SqueezeFrame(21, 1.0)) == pytest.approx(1.0, abs=1e-6)


class _FakeFrame:
    # frames refuse lam <= 0; the kernel guard is exercised with a stand-in
    def __init__(self, lam, phi):
        self.lam, self.phi = lam, phi


class TestPDE:
    def test_example_low(self):
        rep = pde_residual_husimi(0, PhasePoint(0.5, 0.5), SqueezeFrame(2, 0))
        assert abs(rep.residuals[0]) < 1e-4
        assert 1.8 <= rep.estimated_order <= 2.2

    def test_example_rotated(self):
        rep = pde_residual_husimi(3, PhasePoint(0.7, -0.4), SqueezeFrame(4, math.pi / 3))
        assert 1.8 <= rep.estimated_order <= 2.2
        assert rep.step_sizes == [1e-2, 5e-3, 2.5e-3]

    def test_rejects_singular(self):
        with pytest.raises(DegenerateParameters):
            pde_residual_husimi(0, PhasePoint(0, 0), SqueezeFrame(1, 0))
        with pytest.raises(DegenerateParameters):
            pde_residual_marginals(0, 0.0, SqueezeFrame(1, 0.4))
        # lam = cot^2(phi/2)
        with pytest.raises(DegenerateParameters):
            pde_residual_marginals(1, 0.3, SqueezeFrame(3.0, 2 * math.atan(1 / math.sqrt(3))))

    @pytest.mark.parametrize("which, n, x, lam, phi", [("q", 2, 0.8, 3.0, 0.4), ("p", 1, -0.5, 5.0, 1.9), ("q", 4, 1.2, 0.4, 2.8)])
    def test_marginals(self, which, n, x, lam, phi):
        rep = pde_residual_marginals(n, x, SqueezeFrame(lam, phi), which=which)
        assert 1.8 <= rep.estimated_order <= 2.2

    def test_marginal_axis_validated(self):
        with pytest.raises(ValueError):
            pde_residual_marginals(0, 0.0, SqueezeFrame(3, 0.4), which="r")

    def test_singular_distance(self):
        assert singular_distance(SqueezeFrame(1, 0.5)) == 0.0
        fr = SqueezeFrame(3.0, math.pi / 2)
        assert singular_distance(fr) == pytest.approx(2.0)


class TestIdentities:
    def test_suite_passes(self):
        checks = identity_suite(n_max=6, draws=2)
        assert checks and all(c.passed for c in checks)
        names = {c.name.split("/")[1] for c in checks}
        assert names == {"bailey", "hyp2f1", "cnk", "a7"}

    def test_trivial_order(self):
        for c in identity_suite(n_max=0, draws=1):
            assert c.measured <= 1e-15

    def test_a7_example(self):
        beta = 2.0
        alpha = constrained_alpha(beta)
        assert alpha * alpha == pytest.approx(4 / 7, rel=1e-15)
        lhs, rhs = _a7_sides(1, Fraction(alpha), Fraction(beta), Fraction(3, 10))
        assert float(lhs) == pytest.approx(float(rhs), rel=1e-12)

    def test_a7_needs_width_constraint(self):
        # alpha = 1, beta = 2 violates 1/alpha^2 + 1/beta^2 = 2
        lhs, rhs = _a7_sides(1, Fraction(1), Fraction(2), Fraction(3, 10))
        assert abs(float(lhs - rhs)) > 1e-3

    @settings(max_examples=30, deadline=None)
    @given(st.floats(0.75, 3.0))
    def test_constraint(self, beta):
        alpha = constrained_alpha(beta)
        assert 1 / alpha**2 + 1 / beta**2 == pytest.approx(2.0, rel=1e-14)

    def test_constraint_domain(self):
        with pytest.raises(ValueError):
            constrained_alpha(0.5)


class TestCheck:
    def test_to_dict(self):
        c = Check("x/y", True, 1e-12, 1e-10)
        assert c.to_dict() == {"name": "x/y", "pass": True, "measured": 1e-12, "tolerance": 1e-10}
        d = Check("x/z", True, None, None, detail="skipped: singular manifold", skipped=True).to_dict()
        assert d["detail"] == "skipped: singular manifold"
