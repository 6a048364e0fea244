"""Correlation part C = P - Q R of the Fock-state Husimi function.

C is split into C1 = P - C3 (propagated initial correlations) and
C2 = C3 - Q R (correlations created by the rotation), where C3 is the
inverse transform of K * Q~ * R~.  C3 is summed in closed form with the
bilinear Hermite generating function, valid for ``|2 a1 a2 a3| < 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp

from .errors import ConvergenceDomain, NoConvergence
from .marginals import marginal_p, marginal_q
from .phase_space import DistributionSample, Flag, Kind, PhasePoint, SqueezeFrame, _check_n, husimi_fock

__all__ = [
    "CorrelationParams",
    "corr_params",
    "corr_total",
    "corr_c3",
    "corr_c3_series",
    "corr_c1",
    "corr_c2",
]

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class CorrelationParams:
    alpha1: float
    alpha2: float
    alpha3: float

    @property
    def coupling(self) -> float:
        """2 a1 a2 a3; the closed form for C3 needs |coupling| < 1."""
        return 2.0 * self.alpha1 * self.alpha2 * self.alpha3


def corr_params(frame: SqueezeFrame) -> CorrelationParams:
    """Gaussian widths a1 (for q), a2 (for p) and the cross strength a3.

    They satisfy 1/a1^2 + 1/a2^2 = (lam + 1)^2 / lam.
    """
    lam, c2, s2 = frame.lam, frame.cos2, frame.sin2
    a1 = math.sqrt(lam / ((lam + 1.0) * (c2 + lam * s2)))
    a2 = math.sqrt(lam / ((lam + 1.0) * (lam * c2 + s2)))
    a3 = (lam * lam - 1.0) / (4.0 * lam) * frame.sin_phi
    return CorrelationParams(a1, a2, a3)


def corr_total(n: int, point: PhasePoint, frame: SqueezeFrame) -> DistributionSample:
    """C_n = P_n - Q_n R_n; may take either sign."""
    _check_n(n)
    hus = husimi_fock(n, point, frame)
    qv = marginal_q(n, point.q, frame)
    rv = marginal_p(n, point.p, frame)
    flags = hus.flags | qv.flags | rv.flags
    return DistributionSample(
        Kind.CORR_TOTAL, n, frame, point, hus.value - qv.value * rv.value, flags
    )


#: Digits kept beyond those cancelled in the C3 sum.
_GUARD_DIGITS = 24


def _c3_sum(n: int, X, Y, cq, cp, four_t) -> tuple:
    """sum_r r! (4t)^r A_r B_r and the same sum over absolute values.

    A_r = sum_k C(n,k) (cq/2)^k / k! C(2k, r) H_{2k-r}(X), B_r likewise in
    (cp, Y): the double sum over (k, m) separates for each order r of the
    cross term.
    """

    def hermite(z):
        out = [mp.mpf(1), 2 * z]
        for j in range(1, 2 * n):
            out.append(2 * z * out[j] - 2 * j * out[j - 1])
        return out

    def partial(c, herm):
        weights = [mp.mpf(1)]
        for k in range(1, n + 1):
            weights.append(weights[-1] * (c / 2) * (n - k + 1) / (k * k))
        signed, absolute = [], []
        for r in range(2 * n + 1):
            acc = acc_abs = mp.mpf(0)
            for k in range((r + 1) // 2, n + 1):
                term = math.comb(2 * k, r) * weights[k] * herm[2 * k - r]
                acc += term
                acc_abs += abs(term)
            signed.append(acc)
            absolute.append(acc_abs)
        return signed, absolute

    a_r, a_abs = partial(cq, hermite(X))
    b_r, b_abs = partial(cp, hermite(Y))
    total = magnitude = mp.mpf(0)
    weight = mp.mpf(1)
    for r in range(2 * n + 1):
        total += weight * a_r[r] * b_r[r]
        magnitude += abs(weight) * a_abs[r] * b_abs[r]
        weight *= (r + 1) * four_t
    return total, magnitude


def _c3_closed_form(n: int, p: float, q: float, params: CorrelationParams) -> float:
    """C3 from the bilinear Hermite generating function.

    2 a1 a2 / sqrt(u) exp(-(x^2 - 4 t x y + y^2)/u) sum_r r! (4t)^r A_r B_r
    with x = a1 q, y = a2 p, t = -a1 a2 a3, u = 1 - 4 t^2 and Hermite
    arguments X = (x - 2 t y)/sqrt(u), Y = (y - 2 t x)/sqrt(u).

    The value is well conditioned in its inputs but the sum cancels heavily
    as |2 a1 a2 a3| -> 1, so it is accumulated in multiprecision with enough
    digits to cover the measured cancellation.
    """
    a1, a2 = params.alpha1, params.alpha2
    # The kernel cross factor exp(-a3 xi eta) acts as exp(-a3 d^2/dp dq) on
    # Q R, so the generating-function variable is t = -a1 a2 a3.
    t = -a1 * a2 * params.alpha3
    digits = _GUARD_DIGITS
    while True:
        with mp.workdps(digits):
            T = mp.mpf(t)
            u = 1 - 4 * T * T
            ru = mp.sqrt(u)
            x = mp.mpf(a1) * q
            y = mp.mpf(a2) * p
            total, magnitude = _c3_sum(
                n, (x - 2 * T * y) / ru, (y - 2 * T * x) / ru, mp.mpf(a1) ** 2 / u, mp.mpf(a2) ** 2 / u, 4 * T
            )
            if total == 0:
                return 0.0
            lost = float(mp.log10(magnitude / abs(total)))
            if lost + _GUARD_DIGITS <= digits:
                value = 2 * mp.mpf(a1) * a2 / ru * mp.exp(-(x * x - 4 * T * x * y + y * y) / u) * total
                return float(value)
        digits = int(lost) + _GUARD_DIGITS + 1


def _check_domain(params: CorrelationParams) -> None:
    if not abs(params.coupling) < 1.0:
        raise ConvergenceDomain(
            f"|2 a1 a2 a3| = {abs(params.coupling)!r} >= 1; bilinear Hermite sum diverges"
        )


def corr_c3(n: int, point: PhasePoint, frame: SqueezeFrame) -> DistributionSample:
    """C3_n: the marginal product with rotation-induced correlations switched on.

    Reduces to Q_n R_n when sin(phi) = 0 or lam = 1.
    """
    _check_n(n)
    params = corr_params(frame)
    _check_domain(params)
    if params.alpha3 == 0.0:
        value = marginal_q(n, point.q, frame).value * marginal_p(n, point.p, frame).value
    else:
        value = _c3_closed_form(n, point.p, point.q, params)
    return DistributionSample(Kind.CORR_C3, n, frame, point, value)


def corr_c3_series(
    n: int,
    point: PhasePoint,
    frame: SqueezeFrame,
    rel_tol: float = 1e-14,
    l_max: int = 5000,
) -> DistributionSample:
    """C3_n from the explicit series over derivative order l, truncated.

    2 a1 a2 e^{-(a1 q)^2 - (a2 p)^2} sum_{k,m} C(n,k) a1^{2k}/(2^k k!) C(n,m) a2^{2m}/(2^m m!)
        * sum_l t^l / l! H_{l+2k}(a1 q) H_{l+2m}(a2 p),   t = -a1 a2 a3.

    Summation stops once every (k, m) term has stayed below ``rel_tol`` of
    the running total for 8 consecutive orders, or at ``l_max``.  The sum is
    accumulated in binary64, so it is a cross-check for moderate coupling
    only; :class:`NoConvergence` is raised when more than 6 digits cancel.
    """
    _check_n(n)
    params = corr_params(frame)
    _check_domain(params)
    a1, a2 = params.alpha1, params.alpha2
    t = -a1 * a2 * params.alpha3
    x = a1 * point.q
    y = a2 * point.p

    # Normalized Hermite functions h_j = H_j / sqrt(2^j j!), kept bounded.
    def normalized(arg: float, count: int) -> list[float]:
        out = [1.0]
        if count > 1:
            out.append(math.sqrt(2.0) * arg)
        for j in range(1, count - 1):
            out.append(arg * math.sqrt(2.0 / (j + 1)) * out[j] - math.sqrt(j / (j + 1)) * out[j - 1])
        return out

    weights_q = [
        math.comb(n, k) * a1 ** (2 * k) / (2**k * math.factorial(k)) for k in range(n + 1)
    ]
    weights_p = [
        math.comb(n, m) * a2 ** (2 * m) / (2**m * math.factorial(m)) for m in range(n + 1)
    ]

    hx = normalized(x, 2 * n + 64)
    hy = normalized(y, 2 * n + 64)
    total = 0.0
    magnitude = 0.0
    quiet = 0
    flags = {Flag.TRUNCATED_SERIES}
    l = 0
    while l <= l_max:
        while len(hx) <= l + 2 * n:
            j = len(hx) - 1
            hx.append(x * math.sqrt(2.0 / (j + 1)) * hx[j] - math.sqrt(j / (j + 1)) * hx[j - 1])
            hy.append(y * math.sqrt(2.0 / (j + 1)) * hy[j] - math.sqrt(j / (j + 1)) * hy[j - 1])
        biggest = 0.0
        for k in range(n + 1):
            for m in range(n + 1):
                # t^l/l! H_{l+2k} H_{l+2m} = (2t)^l sqrt((l+2k)! (l+2m)!)/l! 2^{k+m} h h
                log_mag = (
                    (l * math.log(abs(2.0 * t)) if l else 0.0)
                    + 0.5 * (math.lgamma(l + 2 * k + 1) + math.lgamma(l + 2 * m + 1))
                    - math.lgamma(l + 1)
                    + (k + m) * _LN2
                )
                if log_mag > 700.0:
                    raise NoConvergence(
                        f"series terms overflow at order {l}; |2 a1 a2 a3| = {abs(params.coupling):.6g} is too close to 1"
                    )
                sign = -1.0 if (t < 0 and l & 1) else 1.0
                term = sign * math.exp(log_mag) * hx[l + 2 * k] * hy[l + 2 * m]
                term *= weights_q[k] * weights_p[m]
                total += term
                magnitude += abs(term)
                biggest = max(biggest, abs(term))
        quiet = quiet + 1 if biggest <= rel_tol * abs(total) else 0
        if t == 0.0:
            # without coupling only the l = 0 order survives and the sum is exact
            flags.clear()
            break
        if quiet >= 8:
            break
        l += 1
    if magnitude > 1e6 * abs(total):
        raise NoConvergence(
            f"series cancels by {math.log10(magnitude / abs(total)) if total else math.inf:.1f} digits; "
            f"|2 a1 a2 a3| = {abs(params.coupling):.6g} is too close to 1 for binary64"
        )
    value = 2.0 * a1 * a2 * math.exp(-(x * x + y * y)) * total
    return DistributionSample(Kind.CORR_C3, n, frame, point, value, frozenset(flags))


def corr_c1(n: int, point: PhasePoint, frame: SqueezeFrame) -> DistributionSample:
    """C1_n = P_n - C3_n; equals the full correlation when sin(phi) = 0."""
    c3 = corr_c3(n, point, frame)
    hus = husimi_fock(n, point, frame)
    return DistributionSample(
        Kind.CORR_C1, n, frame, point, hus.value - c3.value, hus.flags | c3.flags
    )


def corr_c2(n: int, point: PhasePoint, frame: SqueezeFrame) -> DistributionSample:
    """C2_n = C3_n - Q_n R_n; exactly zero when sin(phi) = 0 or lam = 1."""
    c3 = corr_c3(n, point, frame)
    qv = marginal_q(n, point.q, frame)
    rv = marginal_p(n, point.p, frame)
    params = corr_params(frame)
    value = 0.0 if params.alpha3 == 0.0 else c3.value - qv.value * rv.value
    return DistributionSample(
        Kind.CORR_C2, n, frame, point, value, c3.flags | qv.flags | rv.flags
    )
