"""Marginal distributions Q_n(q; lam, phi) and R_n(p; lam, phi).

The closed form is a sum over k of ``(-1)^k L_{n-k}(0) s^k L_k(x/s)`` times a
Gaussian, where both ``s`` and the Laguerre argument blow up or vanish on the
manifolds ``lam = 1`` and ``lam = cot^2(phi/2)``.  Only the product
``s^k L_k(x/s)`` is ever formed, through
:func:`~squeezed_husimi.specfun.laguerre_half_scaled`, so the evaluation is
regular everywhere.

The Hermite-product form obtained by direct integration, and its expansion
coefficients, are kept as independent cross-check paths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import specfun
from .errors import OutsideValidityRegion
from .phase_space import DistributionSample, Flag, Kind, PhasePoint, SqueezeFrame, _check_n
from .specfun import ScaledReal

__all__ = [
    "MarginalParams",
    "marginal_params",
    "marginal_q_unsqueezed",
    "marginal_q",
    "marginal_p",
    "marginal_p_direct",
    "marginal_q_hermite_form",
    "coeff_c_nk",
    "coeff_c_nk_double_sum",
]

#: |s| below this marks evaluation on (or next to) a singular manifold.
SINGULAR_S = 1e-8

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class MarginalParams:
    """alpha^2 and the signed beta^2 of the Hermite-product form.

    ``beta_sq < 0`` means beta is imaginary; ``beta_sq`` is infinite on the
    manifolds lam = 1 and lam = cot^2(phi/2).
    """

    alpha_sq: float
    beta_sq: float

    @property
    def alpha(self) -> float:
        return math.sqrt(self.alpha_sq)

    @property
    def beta_is_real(self) -> bool:
        return 0.0 < self.beta_sq < math.inf


def marginal_params(frame: SqueezeFrame) -> MarginalParams:
    lam, c2, s2 = frame.lam, frame.cos2, frame.sin2
    alpha_sq = lam / ((lam + 1.0) * (c2 + lam * s2))
    den = (lam - 1.0) * (c2 - lam * s2)
    beta_sq = lam / den if den != 0.0 else math.inf
    return MarginalParams(alpha_sq, beta_sq)


def marginal_q_unsqueezed(n: int, q: float) -> float:
    """exp(-q^2/2) sum_k L_{n-k}^(-1/2)(0) q^{2k} / (2^k k!)."""
    _check_n(n)
    zeros = specfun.laguerre_half_zero_floats(n)
    r = 0.5 * q * q
    if r == 0.0:
        return zeros[n]
    log_r = math.log(r)
    return math.fsum(
        math.exp(math.log(zeros[n - k]) + k * log_r - math.lgamma(k + 1) - r) for k in range(n + 1)
    )


def _laguerre_sum(n: int, s: float, x: float, alternating: bool) -> tuple[float, int]:
    """sum_k (+-1)^k L_{n-k}(0) M_k with M_k = s^k L_k(x/s), as (mantissa, exponent)."""
    zeros = specfun.laguerre_half_zero_floats(n)
    mants, exps = specfun._laguerre_half_scaled_parts(n, s, x)
    terms = [
        zeros[n - k] * (-mants[k] if (alternating and k & 1) else mants[k]) for k in range(n + 1)
    ]
    return specfun._sum_parts(terms, exps)


def _q_value(n: int, q: float, lam: float, c2: float, s2: float) -> tuple[float, float]:
    """Q_n(q; lam, phi) and the scaled-Laguerre parameter s."""
    d = c2 + lam * s2
    s = (lam - 1.0) * (c2 - lam * s2) / ((lam + 1.0) * d)
    x = 2.0 * lam * lam * q * q / ((lam + 1.0) ** 2 * d * d)
    m, e = _laguerre_sum(n, s, x, alternating=True)
    if m <= 0.0:
        return 0.0, s
    log_val = (
        0.5 * math.log(2.0 * lam / ((lam + 1.0) * d))
        + math.log(m)
        + e * _LN2
        - lam * q * q / ((lam + 1.0) * d)
    )
    return math.exp(log_val), s


def marginal_q(n: int, q: float, frame: SqueezeFrame) -> DistributionSample:
    """Marginal Q_n(q; lam, phi) = integral of P_n over p with weight 1/sqrt(2 pi)."""
    _check_n(n)
    value, s = _q_value(n, q, frame.lam, frame.cos2, frame.sin2)
    flags = frozenset({Flag.SINGULAR_FALLBACK}) if abs(s) < SINGULAR_S else frozenset()
    return DistributionSample(Kind.MARGINAL_Q, n, frame, PhasePoint(0.0, q), value, flags)


def marginal_p(n: int, p: float, frame: SqueezeFrame) -> DistributionSample:
    """Marginal R_n(p; lam, phi), evaluated as Q_n(p; 1/lam, phi)."""
    _check_n(n)
    # Q with lam -> 1/lam; cos2/sin2 are those of phi itself.
    value, s = _q_value(n, p, 1.0 / frame.lam, frame.cos2, frame.sin2)
    flags = {Flag.RECIPROCAL_SYMMETRY}
    if abs(s) < SINGULAR_S:
        flags.add(Flag.SINGULAR_FALLBACK)
    return DistributionSample(Kind.MARGINAL_P, n, frame, PhasePoint(p, 0.0), value, frozenset(flags))


def marginal_p_direct(n: int, p: float, frame: SqueezeFrame) -> float:
    """R_n(p; lam, phi) from its own closed form (no reciprocal mapping)."""
    _check_n(n)
    lam, c2, s2 = frame.lam, frame.cos2, frame.sin2
    d = lam * c2 + s2
    s = (lam - 1.0) * (lam * c2 - s2) / ((lam + 1.0) * d)
    x = -2.0 * lam * lam * p * p / ((lam + 1.0) ** 2 * d * d)
    # sum_k L_k(0) s^{n-k} L_{n-k}(x/s): same convolution with the roles of k swapped.
    m, e = _laguerre_sum(n, s, x, alternating=False)
    if m <= 0.0:
        return 0.0
    return math.exp(
        0.5 * math.log(2.0 * lam / ((lam + 1.0) * d))
        + math.log(m)
        + e * _LN2
        - lam * p * p / ((lam + 1.0) * d)
    )


def marginal_q_hermite_form(n: int, q: float, frame: SqueezeFrame) -> float:
    """Q_n from the finite Hermite-product sum of direct p-integration.

    sqrt(2 a^2) / (2^n n!) (a/b)^n e^{-(a q)^2}
        * sum_k C(n,k) [b/(2a) (a^2/b^2 - 1)]^{n-k} H_k(b q) H_{2n-k}(a q)

    Only valid where beta is real, i.e. 1 < lam < cot^2(phi/2) or
    cot^2(phi/2) < lam < 1.
    """
    _check_n(n)
    params = marginal_params(frame)
    if not params.beta_is_real:
        raise OutsideValidityRegion(
            f"beta^2 = {params.beta_sq!r} at lam={frame.lam}, phi={frame.phi}; need 0 < beta^2 < inf"
        )
    a = params.alpha
    b = math.sqrt(params.beta_sq)
    ratio = params.alpha_sq / params.beta_sq
    base = ScaledReal.make(b / (2.0 * a) * (ratio - 1.0))
    hb = specfun.hermite_real_all(n, b * q)
    ha = specfun.hermite_real_all(2 * n, a * q)
    terms = [math.comb(n, k) * base ** (n - k) * hb[k] * ha[2 * n - k] for k in range(n + 1)]
    total = specfun.scaled_sum(terms)
    if total.mantissa <= 0.0:
        return 0.0
    log_val = (
        0.5 * math.log(2.0 * params.alpha_sq)
        + n * (math.log(a) - math.log(b) - _LN2)
        - math.lgamma(n + 1)
        - params.alpha_sq * q * q
        + total.log_abs()
    )
    return math.exp(log_val)


def coeff_c_nk(n: int, k: int, alpha_sq: float, beta_sq: float) -> float:
    """Expansion coefficient (-1)^k L_{n-k}^(-1/2)(0) (alpha^2/beta^2)^k."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if beta_sq == 0.0:
        raise ValueError("beta must be non-zero")
    value = float(specfun.laguerre_half_zero(n - k)) * (alpha_sq / beta_sq) ** k
    return -value if k & 1 else value


def _f_over_factorial(n: int, s: int, k: int, x: Fraction) -> Fraction:
    """2F1(2n-s+1, -s; 2k-s+1; x) / (2k-s)!, continued to 2k < s.

    For 2k >= s this is the terminating series divided by (2k-s)!; for 2k < s
    the pole of 2F1 cancels against 1/(2k-s)! and the finite sum form with
    1/m! = 0 for negative m is used.
    """
    if 2 * k >= s:
        return specfun._hyp2f1_terminating_exact(2 * n - s + 1, s, 2 * k - s + 1, x) / math.factorial(
            2 * k - s
        )
    total = Fraction(0)
    for l in range(s + 1):
        if 2 * k - s + l < 0:
            continue
        total += Fraction(
            (-1) ** l * math.factorial(2 * n - s + l),
            math.factorial(s - l) * math.factorial(2 * k - s + l) * math.factorial(l),
        ) * x**l
    return total * Fraction(math.factorial(s), math.factorial(2 * n - s))


def coeff_c_nk_double_sum(n: int, k: int, alpha_sq: float, beta_sq: float) -> float:
    """c_nk from the unsimplified sum over s of Bailey-product coefficients.

    (-1)^n/4^n k!/(n-k)! (4a^2)^k (b^2)^{n-k} / (2 a^2 b^2)^n
        * sum_s (2n-s)!/(s!(n-s)!) (4a^2)^s (a^2/b^2 - 1)^{n-s} 2F1(...)/(2k-s)!

    Accumulated in rationals from the exact binary values of the inputs.
    """
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    a2 = Fraction(alpha_sq)
    b2 = Fraction(beta_sq)
    x = 1 / (2 * b2)
    inner = Fraction(0)
    for s in range(n + 1):
        inner += (
            Fraction(math.factorial(2 * n - s), math.factorial(s) * math.factorial(n - s))
            * (4 * a2) ** s
            * (a2 / b2 - 1) ** (n - s)
            * _f_over_factorial(n, s, k, x)
        )
    pre = (
        Fraction((-1) ** n, 4**n)
        * Fraction(math.factorial(k), math.factorial(n - k))
        * (4 * a2) ** k
        * b2 ** (n - k)
        / (2 * a2 * b2) ** n
    )
    return float(pre * inner)
