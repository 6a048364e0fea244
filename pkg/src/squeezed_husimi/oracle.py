"""Independent numerical checks of the closed forms.

Adaptive quadrature (scipy's QUADPACK wrappers) realizes every integral
definition: marginals, normalizations and the Fourier reconstructions.
Central finite differences test the pseudo-diffusion equations, and exact
rational arithmetic drives the Hermite/Laguerre identity chain behind the
marginal closed form.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy import integrate

from . import specfun
from .errors import DegenerateParameters, KernelNotIntegrable, NoConvergence
from .kernels import (
    FourierPoint,
    _kernel_exponent,
    ft_husimi_fock,
    ft_marginal_q,
    is_integrable,
    kernel_K,
    propagated_form,
)
from .marginals import _f_over_factorial, coeff_c_nk, coeff_c_nk_double_sum, marginal_p, marginal_q
from .phase_space import PhasePoint, SqueezeFrame, husimi_fock

__all__ = [
    "QuadratureSpec",
    "ResidualReport",
    "Check",
    "integrate_1d",
    "integrate_2d",
    "integrate_2d_complex",
    "envelope_half_width",
    "marginal_q_quadrature",
    "marginal_p_quadrature",
    "normalization_2d",
    "reconstruct_husimi",
    "corr_c3_quadrature",
    "singular_distance",
    "pde_residual_husimi",
    "pde_residual_marginals",
    "identity_suite",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class QuadratureSpec:
    """Integration box [-L, L] (per axis) and the accuracy requested."""

    half_width: float = 12.0
    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_subdivisions: int = 200

    def __post_init__(self) -> None:
        if not self.half_width > 0:
            raise ValueError("half_width must be positive")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")

    def with_width(self, half_width: float) -> "QuadratureSpec":
        return QuadratureSpec(half_width, self.rel_tol, self.abs_tol, self.max_subdivisions)


@dataclass(frozen=True)
class ResidualReport:
    step_sizes: list[float]
    residuals: list[float]
    estimated_order: float


@dataclass(frozen=True)
class Check:
    """One verification outcome, serialized as ``name, pass, measured, tolerance``."""

    name: str
    passed: bool
    measured: float | None
    tolerance: float | None
    detail: str = ""
    skipped: bool = False

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "pass": self.passed,
            "measured": self.measured,
            "tolerance": self.tolerance,
        }
        if self.detail:
            out["detail"] = self.detail
        return out


# -- quadrature ------------------------------------------------------------


def _quad(f: Callable[[float], float], a: float, b: float, spec: QuadratureSpec) -> tuple[float, float]:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, err, info = integrate.quad(
            f,
            a,
            b,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=True,
        )[:3]
    if err > max(spec.abs_tol, spec.rel_tol * abs(value)) and info["last"] >= spec.max_subdivisions:
        raise NoConvergence(
            f"quadrature on [{a}, {b}] stopped at {info['last']} subintervals, error estimate {err:.3g}"
        )
    return value, err


def integrate_1d(f: Callable[[float], float], spec: QuadratureSpec) -> tuple[float, float]:
    """Adaptive Gauss-Kronrod integral of ``f`` over [-L, L] and its error estimate."""
    L = spec.half_width
    return _quad(f, -L, L, spec)


def integrate_2d(f: Callable[[float, float], float], spec: QuadratureSpec) -> tuple[float, float]:
    """Iterated adaptive integral of ``f(x, y)`` over the square [-L, L]^2.

    The inner integral over ``x`` runs at the requested tolerances; inner
    error estimates are accumulated into the outer one.
    """
    L = spec.half_width
    inner_err = 0.0

    def inner(y: float) -> float:
        nonlocal inner_err
        value, err = _quad(lambda x: f(x, y), -L, L, spec)
        inner_err = max(inner_err, err)
        return value

    value, err = _quad(inner, -L, L, spec)
    return value, err + 2.0 * L * inner_err


def integrate_2d_complex(
    f: Callable[[float, float], complex], spec: QuadratureSpec
) -> tuple[complex, float]:
    """As :func:`integrate_2d` for complex integrands, real and imaginary parts separately."""
    re, re_err = integrate_2d(lambda x, y: f(x, y).real, spec)
    im, im_err = integrate_2d(lambda x, y: f(x, y).imag, spec)
    return complex(re, im), math.hypot(re_err, im_err)


def envelope_half_width(
    f: Callable[[float], float],
    ratio: float = 1e-16,
    start: float = 4.0,
    step: float = 0.5,
    limit: float = 400.0,
) -> float:
    """Smallest L (on a ``step`` grid) with |f| < ratio * peak beyond +-L.

    ``f`` is assumed to be a polynomial times a Gaussian; its magnitude is
    probed on a fine grid over each unit of distance so isolated zeros of the
    polynomial factor cannot fake an early cut-off.
    """
    probe = np.linspace(0.0, step, 9)
    grid = np.linspace(-start, start, 401)
    peak = max(abs(f(x)) for x in grid)
    if peak == 0.0:
        return start
    L = start
    while L < limit:
        edge = max(max(abs(f(L + d)), abs(f(-L - d))) for d in probe)
        if edge < ratio * peak:
            return L
        peak = max(peak, edge)
        L += step
    return limit


# -- integral definitions --------------------------------------------------


def marginal_q_quadrature(n: int, q: float, frame: SqueezeFrame, spec: QuadratureSpec | None = None) -> float:
    """Q_n(q) as the integral of P_n over p with weight 1/sqrt(2 pi)."""

    def f(p: float) -> float:
        return husimi_fock(n, PhasePoint(p, q), frame).value / _SQRT_2PI

    spec = spec or QuadratureSpec()
    return integrate_1d(f, spec.with_width(envelope_half_width(f)))[0]


def marginal_p_quadrature(n: int, p: float, frame: SqueezeFrame, spec: QuadratureSpec | None = None) -> float:
    """R_n(p) as the integral of P_n over q with weight 1/sqrt(2 pi)."""

    def f(q: float) -> float:
        return husimi_fock(n, PhasePoint(p, q), frame).value / _SQRT_2PI

    spec = spec or QuadratureSpec()
    return integrate_1d(f, spec.with_width(envelope_half_width(f)))[0]


def normalization_2d(n: int, frame: SqueezeFrame, spec: QuadratureSpec | None = None) -> float:
    """Integral of P_n over the plane with measure dp dq / (2 pi); equals 1."""
    spec = spec or QuadratureSpec(rel_tol=1e-9, abs_tol=1e-11)
    # The q-integrated slice is the marginal R_n(p), whose Gaussian tail
    # sets a common box for both axes.
    width = max(
        envelope_half_width(lambda p: marginal_p(n, p, frame).value),
        envelope_half_width(lambda q: marginal_q(n, q, frame).value),
    )
    value, _ = integrate_2d(
        lambda q, p: husimi_fock(n, PhasePoint(p, q), frame).value / (2.0 * math.pi),
        spec.with_width(width),
    )
    return value


def _check_kernel(lam: float, phi: float) -> None:
    if not is_integrable(lam, phi):
        raise KernelNotIntegrable(f"propagated envelope grows at lam={lam}, phi={phi}")


def _fourier_width(lam: float, phi: float) -> float:
    # K * exp(-(xi^2 + eta^2)/2) = exp(-v A v^T); the slowest direction sets L.
    smallest = float(np.linalg.eigvalsh(propagated_form(lam, phi)).min())
    return math.sqrt(40.0 / smallest) + 2.0


def reconstruct_husimi(
    n: int, point: PhasePoint, lam: float, phi: float, spec: QuadratureSpec | None = None
) -> float:
    """P_n(p, q; lam, phi) by inverting the kernel-propagated Fourier transform.

    ``lam`` is taken as a bare number so that kernels outside the physical
    range (lam < 0, as in the Glauber-type mapping) reach the integrability
    guard and are refused with :class:`KernelNotIntegrable`.

    The unsqueezed transform is even in (xi, eta) jointly, as is K, so only
    the cosine part of exp(i(eta p - xi q)) contributes.
    """
    _check_kernel(lam, phi)
    spec = spec or QuadratureSpec(rel_tol=1e-10, abs_tol=1e-12)

    def f(xi: float, eta: float) -> float:
        return (
            math.cos(eta * point.p - xi * point.q)
            * math.exp(_kernel_exponent(xi, eta, lam, phi))
            * ft_husimi_fock(n, FourierPoint(xi, eta))
        )

    value, _ = integrate_2d(f, spec.with_width(_fourier_width(lam, phi)))
    return value / (2.0 * math.pi)


def corr_c3_quadrature(n: int, point: PhasePoint, frame: SqueezeFrame, spec: QuadratureSpec | None = None) -> float:
    """C3_n from its Fourier integral with the unsqueezed marginal transforms."""
    _check_kernel(frame.lam, frame.phi)
    spec = spec or QuadratureSpec(rel_tol=1e-10, abs_tol=1e-12)
    ft_cache: dict[float, float] = {}

    def ftq(v: float) -> float:
        if v not in ft_cache:
            ft_cache[v] = ft_marginal_q(n, v)
        return ft_cache[v]

    def f(xi: float, eta: float) -> float:
        return (
            math.cos(eta * point.p - xi * point.q)
            * kernel_K(FourierPoint(xi, eta), frame)
            * ftq(xi)
            * ftq(eta)
        )

    value, _ = integrate_2d(f, spec.with_width(_fourier_width(frame.lam, frame.phi)))
    return value / (2.0 * math.pi)


# -- pseudo-diffusion residuals ---------------------------------------------


def singular_distance(frame: SqueezeFrame) -> float:
    """Distance of lam from 1, cot^2(phi/2) and tan^2(phi/2)."""
    marks = [1.0]
    if frame.sin2 > 0:
        marks.append(frame.cos2 / frame.sin2)
    if frame.cos2 > 0:
        marks.append(frame.sin2 / frame.cos2)
    return min(abs(frame.lam - m) for m in marks)


def _require_regular(frame: SqueezeFrame, h: float) -> None:
    # h is a step in ln(lam), i.e. a relative step in lam.
    if singular_distance(frame) < 10.0 * h * frame.lam:
        raise DegenerateParameters(
            f"lam={frame.lam} lies within 10 h of a singular manifold (h={h})"
        )


def _order(steps: list[float], residuals: list[float]) -> float:
    logs = [math.log(abs(r)) if r != 0.0 else -745.0 for r in residuals]
    slope, _ = np.polyfit(np.log(steps), logs, 1)
    return float(slope)


def _second(f: Callable[[float], float], x: float, h: float) -> float:
    # 5-point stencil, fourth order
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h)


def pde_residual_husimi(
    n: int,
    point: PhasePoint,
    frame: SqueezeFrame,
    h_lambda: float = 1e-2,
    h_space: float = 1e-2,
) -> ResidualReport:
    """Discretized pseudo-diffusion operator applied to P_n at steps h, h/2, h/4.

    d/dlam - [(lam^2 c^2 - s^2) d_pp + (lam^2 s^2 - c^2) d_qq
              - (lam^2 + 1) sin(phi) d_qp] / (4 lam^2)

    with c = cos(phi/2), s = sin(phi/2).  The lam-derivative is the centered
    3-point difference in ln(lam) (nodes lam e^{+-h}), so the lam step scales
    with lam and the residual shrinks as h^2.
    """
    _require_regular(frame, h_lambda)
    lam, phi = frame.lam, frame.phi
    c2, s2, sp = frame.cos2, frame.sin2, frame.sin_phi
    p0, q0 = point.p, point.q

    def P(p: float, q: float, la: float = lam) -> float:
        return husimi_fock(n, PhasePoint(p, q), SqueezeFrame(la, phi)).value

    steps, residuals = [], []
    for scale in (1.0, 0.5, 0.25):
        hl = h_lambda * scale
        hs = h_space * scale
        d_lam = (P(p0, q0, lam * math.exp(hl)) - P(p0, q0, lam * math.exp(-hl))) / (2 * hl * lam)
        d_pp = _second(lambda p: P(p, q0), p0, hs)
        d_qq = _second(lambda q: P(p0, q), q0, hs)
        d_qp = (
            P(p0 + hs, q0 + hs) - P(p0 - hs, q0 + hs) - P(p0 + hs, q0 - hs) + P(p0 - hs, q0 - hs)
        ) / (4 * hs * hs)
        rhs = (
            (lam * lam * c2 - s2) * d_pp + (lam * lam * s2 - c2) * d_qq - (lam * lam + 1) * sp * d_qp
        ) / (4 * lam * lam)
        steps.append(hl)
        residuals.append(d_lam - rhs)
    return ResidualReport(steps, residuals, _order(steps, residuals))


def pde_residual_marginals(
    n: int,
    coord: float,
    frame: SqueezeFrame,
    h: float = 1e-2,
    which: str = "q",
) -> ResidualReport:
    """Marginal diffusion residual for Q_n (``which="q"``) or R_n (``"p"``).

    Q: d/dlam - (lam^2 s^2 - c^2)/(4 lam^2) d_qq;
    R: d/dlam - (lam^2 c^2 - s^2)/(4 lam^2) d_pp.

    Steps as in :func:`pde_residual_husimi`, with ``h`` used for both axes.
    """
    if which not in ("q", "p"):
        raise ValueError("which must be 'q' or 'p'")
    _require_regular(frame, h)
    lam, phi = frame.lam, frame.phi
    c2, s2 = frame.cos2, frame.sin2
    marginal = marginal_q if which == "q" else marginal_p
    coef = (lam * lam * s2 - c2) if which == "q" else (lam * lam * c2 - s2)

    def M(x: float, la: float = lam) -> float:
        return marginal(n, x, SqueezeFrame(la, phi)).value

    steps, residuals = [], []
    for scale in (1.0, 0.5, 0.25):
        hh = h * scale
        d_lam = (M(coord, lam * math.exp(hh)) - M(coord, lam * math.exp(-hh))) / (2 * hh * lam)
        d_xx = _second(M, coord, hh)
        steps.append(hh)
        residuals.append(d_lam - coef * d_xx / (4 * lam * lam))
    return ResidualReport(steps, residuals, _order(steps, residuals))


# -- identity chain ---------------------------------------------------------


def _hermite_exact(n: int, x: Fraction) -> Fraction:
    h0, h1 = Fraction(1), 2 * x
    if n == 0:
        return h0
    for k in range(1, n):
        h0, h1 = h1, 2 * x * h1 - 2 * k * h0
    return h1


def _laguerre_half_exact(k: int, x: Fraction) -> Fraction:
    # sum_j binom(k - 1/2, k - j) (-x)^j / j!
    total = Fraction(0)
    for j in range(k + 1):
        b = Fraction(1)
        for i in range(k - j):
            b *= Fraction(2 * k - 1 - 2 * i, 2)
        b /= math.factorial(k - j)
        total += b * (-x) ** j / math.factorial(j)
    return total


def _rel_err(a: Fraction | float, b: Fraction | float) -> float:
    a, b = float(a), float(b)
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def _bailey_rhs(n: int, s: int, a: Fraction, b: Fraction, q: Fraction) -> Fraction:
    x = 1 / (2 * b * b)
    arg = 2 * (a * b * q) ** 2
    total = Fraction(0)
    for k in range(n + 1):
        total += (
            Fraction(math.factorial(k), math.factorial(n - k))
            * (2 * a) ** (2 * k)
            * b ** (2 * (n - k))
            * _f_over_factorial(n, s, k, x)
            * _laguerre_half_exact(k, arg)
        )
    return Fraction((-1) ** n * math.factorial(2 * n - s), 2 ** (n - s)) / (a * b) ** (2 * n - s) * total


def _a10_sum(n: int, s: int, k: int, x: Fraction) -> Fraction:
    total = Fraction(0)
    for l in range(s + 1):
        total += Fraction(
            (-1) ** l * math.factorial(2 * n - s + l),
            math.factorial(s - l) * math.factorial(2 * k - s + l) * math.factorial(l),
        ) * x**l
    return Fraction(math.factorial(s) * math.factorial(2 * k - s), math.factorial(2 * n - s)) * total


def _a7_sides(n: int, a: Fraction, b: Fraction, q: Fraction) -> tuple[Fraction, Fraction]:
    lhs = Fraction(0)
    for s in range(n + 1):
        lhs += (
            math.comb(n, s)
            * (2 * a / b) ** s
            * (a * a / (b * b) - 1) ** (n - s)
            * _hermite_exact(s, b * q)
            * _hermite_exact(2 * n - s, a * q)
        )
    lhs /= 4**n * math.factorial(n)
    arg = 2 * (a * b * q) ** 2
    a2, b2 = float(a * a), float(b * b)
    rhs = sum(
        (Fraction(coeff_c_nk(n, k, a2, b2)) * _laguerre_half_exact(k, arg) for k in range(n + 1)),
        Fraction(0),
    )
    return lhs, rhs


def constrained_alpha(beta: float) -> float:
    """alpha with 1/alpha^2 + 1/beta^2 = 2, the relation tying the marginal widths."""
    b2 = beta * beta
    if not b2 > 0.5:
        raise ValueError("need beta^2 > 1/2")
    return math.sqrt(b2 / (2.0 * b2 - 1.0))


def identity_suite(n_max: int = 8, draws: int = 3, seed: int = 20240611, tol: float = 1e-10) -> list[Check]:
    """Exact-arithmetic checks of the Hermite-product to Laguerre reduction.

    For each n <= ``n_max`` and ``draws`` random (beta, q) with beta^2 > 1/2
    and alpha tied to beta by 1/alpha^2 + 1/beta^2 = 2:

    * ``bailey``: H_s(beta q) H_{2n-s}(alpha q) against its Laguerre expansion;
    * ``hyp2f1``: the terminating 2F1 against its finite-sum reduction;
    * ``cnk``: the double-sum coefficients against the closed form;
    * ``a7``: the Hermite-product sum against sum_k c_nk L_k(2 (alpha beta q)^2).

    alpha and beta enter as the exact binary values of their floats, so only
    the constraint itself carries rounding (relative ~1e-16).
    """
    rng = random.Random(seed)
    checks: list[Check] = []
    for n in range(n_max + 1):
        worst = {"bailey": 0.0, "hyp2f1": 0.0, "cnk": 0.0, "a7": 0.0}
        where = {key: "" for key in worst}
        for _ in range(draws):
            beta = rng.uniform(0.75, 3.0)
            alpha = constrained_alpha(beta)
            qf = rng.uniform(-2.0, 2.0)
            a, b, q = Fraction(alpha), Fraction(beta), Fraction(qf)
            tag = f"alpha={alpha:.6g}, beta={beta:.6g}, q={qf:.6g}"
            for s in range(n + 1):
                lhs = _hermite_exact(s, b * q) * _hermite_exact(2 * n - s, a * q)
                scale = max(abs(float(lhs)), 1.0)
                err = abs(float(lhs - _bailey_rhs(n, s, a, b, q))) / scale
                if err > worst["bailey"]:
                    worst["bailey"], where["bailey"] = err, f"s={s}, {tag}"
                x = 1 / (2 * b * b)
                for k in range(n + 1):
                    if 2 * k < s:
                        continue  # 2F1 has a pole; only its regularized form exists
                    direct = specfun._hyp2f1_terminating_exact(2 * n - s + 1, s, 2 * k - s + 1, x)
                    err = _rel_err(direct, _a10_sum(n, s, k, x))
                    if err > worst["hyp2f1"]:
                        worst["hyp2f1"], where["hyp2f1"] = err, f"s={s}, k={k}, {tag}"
            for k in range(n + 1):
                closed = coeff_c_nk(n, k, alpha * alpha, beta * beta)
                double = coeff_c_nk_double_sum(n, k, float(a * a), float(b * b))
                err = abs(closed - double) / max(abs(closed), 1e-300)
                if err > worst["cnk"]:
                    worst["cnk"], where["cnk"] = err, f"k={k}, {tag}"
            lhs, rhs = _a7_sides(n, a, b, q)
            err = _rel_err(lhs, rhs)
            if err > worst["a7"]:
                worst["a7"], where["a7"] = err, tag
        for key, err in worst.items():
            checks.append(
                Check(f"identities/{key}/n={n}", err <= tol, err, tol, where[key] if err > tol else "")
            )
    return checks
