"""Overflow-safe special functions.

Hermite and associated Laguerre (alpha = -1/2) polynomials are evaluated by
their three-term recurrences while a power-of-two exponent is carried on the
side, so orders in the hundreds or thousands neither overflow nor underflow.
Exact helpers (Laguerre values at the origin, terminating 2F1 sums) work in
integer/rational arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DegenerateParameters

__all__ = [
    "ScaledReal",
    "ScaledComplex",
    "scaled_sum",
    "hermite_scaled",
    "hermite_scaled_all",
    "hermite_real_all",
    "laguerre_half",
    "laguerre_half_scaled",
    "laguerre_half_scaled_all",
    "laguerre_general_zero",
    "laguerre_half_zero",
    "laguerre_half_zero_floats",
    "hyp2f1_terminating",
]

# Renormalize whenever a running mantissa leaves [2**-512, 2**512].
_RENORM_BITS = 512
_HI = 2.0**_RENORM_BITS
_LO = 2.0**-_RENORM_BITS
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class ScaledReal:
    """Real number stored as ``mantissa * 2**exponent``.

    The mantissa is kept in ``[1, 2)`` (signed); zero is ``(0.0, 0)``.
    Use :meth:`make` rather than the constructor when the parts are not
    already normalized.
    """

    mantissa: float
    exponent: int

    @classmethod
    def make(cls, value: float, exponent: int = 0) -> "ScaledReal":
        if value == 0.0:
            return cls(0.0, 0)
        if not math.isfinite(value):
            raise ValueError(f"cannot scale non-finite value {value!r}")
        f, k = math.frexp(value)
        return cls(2.0 * f, exponent + k - 1)

    @classmethod
    def from_int(cls, value: int) -> "ScaledReal":
        """Exact for |value| < 2**53, correctly rounded beyond."""
        if value == 0:
            return cls(0.0, 0)
        shift = max(value.bit_length() - 60, 0)
        return cls.make(float(Fraction(value, 1 << shift)), shift)

    @classmethod
    def from_log(cls, log_abs: float, sign: float = 1.0) -> "ScaledReal":
        """Build ``sign * exp(log_abs)`` without overflow."""
        if log_abs == -math.inf or sign == 0:
            return cls(0.0, 0)
        k = math.floor(log_abs / _LN2)
        return cls.make(math.copysign(math.exp(log_abs - k * _LN2), sign), k)

    def __float__(self) -> float:
        if self.mantissa == 0.0:
            return 0.0
        try:
            return math.ldexp(self.mantissa, self.exponent)
        except OverflowError:
            return math.copysign(math.inf, self.mantissa)

    def log_abs(self) -> float:
        if self.mantissa == 0.0:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.exponent * _LN2

    @property
    def sign(self) -> int:
        return (self.mantissa > 0) - (self.mantissa < 0)

    def __neg__(self) -> "ScaledReal":
        return ScaledReal(-self.mantissa, self.exponent)

    def __abs__(self) -> "ScaledReal":
        return ScaledReal(abs(self.mantissa), self.exponent)

    def __mul__(self, other: "ScaledReal | float | int") -> "ScaledReal":
        if isinstance(other, ScaledReal):
            return ScaledReal.make(
                self.mantissa * other.mantissa, self.exponent + other.exponent
            )
        if isinstance(other, int) and abs(other) >= 2**53:
            return self * ScaledReal.from_int(other)
        return ScaledReal.make(self.mantissa * float(other), self.exponent)

    __rmul__ = __mul__

    def __truediv__(self, other: "ScaledReal | float | int") -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = (
                ScaledReal.from_int(other)
                if isinstance(other, int)
                else ScaledReal.make(float(other))
            )
        if other.mantissa == 0.0:
            raise ZeroDivisionError("division by scaled zero")
        return ScaledReal.make(
            self.mantissa / other.mantissa, self.exponent - other.exponent
        )

    def __add__(self, other: "ScaledReal | float | int") -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.make(float(other))
        return scaled_sum((self, other))

    __radd__ = __add__

    def __sub__(self, other: "ScaledReal | float | int") -> "ScaledReal":
        if not isinstance(other, ScaledReal):
            other = ScaledReal.make(float(other))
        return scaled_sum((self, -other))

    def __pow__(self, k: int) -> "ScaledReal":
        if k < 0:
            return ScaledReal(1.0, 0) / (self**-k)
        result = ScaledReal(1.0, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


@dataclass(frozen=True)
class ScaledComplex:
    """Complex number with independently scaled real and imaginary parts."""

    re: ScaledReal
    im: ScaledReal

    @classmethod
    def make(cls, value: complex, exponent: int = 0) -> "ScaledComplex":
        return cls(
            ScaledReal.make(value.real, exponent), ScaledReal.make(value.imag, exponent)
        )

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def abs2(self) -> ScaledReal:
        """Modulus squared, ``re**2 + im**2``, without overflow."""
        return scaled_sum((self.re * self.re, self.im * self.im))

    def log_abs2(self) -> float:
        return self.abs2().log_abs()


def scaled_sum(values: Iterable[ScaledReal]) -> ScaledReal:
    """Sum scaled numbers by aligning them to the largest exponent."""
    vals = [v for v in values if v.mantissa != 0.0]
    if not vals:
        return ScaledReal(0.0, 0)
    top = max(v.exponent for v in vals)
    total = math.fsum(math.ldexp(v.mantissa, v.exponent - top) for v in vals)
    return ScaledReal.make(total, top)


def _sum_parts(mants: Sequence[float], exps: Sequence[int]) -> tuple[float, int]:
    """fsum of ``m * 2**e`` pairs, returned as (mantissa, exponent)."""
    top = None
    for m, e in zip(mants, exps):
        if m != 0.0 and (top is None or e > top):
            top = e
    if top is None:
        return 0.0, 0
    return math.fsum(math.ldexp(m, e - top) for m, e in zip(mants, exps)), top


# ---------------------------------------------------------------------------
# Hermite polynomials (physicists' convention)
# ---------------------------------------------------------------------------


def _hermite_pair(n: int, z: complex) -> tuple[complex, int]:
    """Return (mantissa, exponent) with H_n(z) = mantissa * 2**exponent."""
    if n == 0:
        return 1.0 + 0.0j, 0
    two_z = 2.0 * z
    h_prev, h = 1.0 + 0.0j, two_z
    e = 0
    for k in range(1, n):
        h_prev, h = h, two_z * h - (2.0 * k) * h_prev
        big = max(abs(h.real), abs(h.imag), abs(h_prev.real), abs(h_prev.imag))
        if big > _HI:
            h = complex(math.ldexp(h.real, -_RENORM_BITS), math.ldexp(h.imag, -_RENORM_BITS))
            h_prev = complex(
                math.ldexp(h_prev.real, -_RENORM_BITS), math.ldexp(h_prev.imag, -_RENORM_BITS)
            )
            e += _RENORM_BITS
        elif 0.0 < big < _LO:
            h = complex(math.ldexp(h.real, _RENORM_BITS), math.ldexp(h.imag, _RENORM_BITS))
            h_prev = complex(
                math.ldexp(h_prev.real, _RENORM_BITS), math.ldexp(h_prev.imag, _RENORM_BITS)
            )
            e -= _RENORM_BITS
    return h, e


def hermite_scaled(n: int, z: complex) -> ScaledComplex:
    """Hermite polynomial H_n(z) for complex ``z`` in scaled form.

    Uses ``H_{k+1} = 2 z H_k - 2 k H_{k-1}`` with the running pair rescaled
    by ``2**512`` whenever it drifts out of range.

    >>> complex(hermite_scaled(4, 0))
    (12+0j)
    """
    if n < 0:
        raise ValueError("Hermite order must be non-negative")
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("argument must be finite")
    h, e = _hermite_pair(n, z)
    return ScaledComplex.make(h, e)


def hermite_scaled_all(n_max: int, z: complex) -> list[ScaledComplex]:
    """H_0(z), ..., H_{n_max}(z) in scaled form."""
    z = complex(z)
    out = [ScaledComplex.make(1.0 + 0.0j)]
    if n_max == 0:
        return out
    two_z = 2.0 * z
    h_prev, h, e = 1.0 + 0.0j, two_z, 0
    out.append(ScaledComplex.make(h))
    for k in range(1, n_max):
        h_prev, h = h, two_z * h - (2.0 * k) * h_prev
        big = max(abs(h.real), abs(h.imag), abs(h_prev.real), abs(h_prev.imag))
        if big > _HI or 0.0 < big < _LO:
            shift = -_RENORM_BITS if big > _HI else _RENORM_BITS
            h = complex(math.ldexp(h.real, shift), math.ldexp(h.imag, shift))
            h_prev = complex(math.ldexp(h_prev.real, shift), math.ldexp(h_prev.imag, shift))
            e -= shift
        out.append(ScaledComplex.make(h, e))
    return out


def hermite_real_all(n_max: int, x: float) -> list[ScaledReal]:
    """H_0(x), ..., H_{n_max}(x) for real ``x`` in scaled form."""
    x = float(x)
    out = [ScaledReal(1.0, 0)]
    if n_max == 0:
        return out
    two_x = 2.0 * x
    h_prev, h, e = 1.0, two_x, 0
    out.append(ScaledReal.make(h))
    for k in range(1, n_max):
        h_prev, h = h, two_x * h - (2.0 * k) * h_prev
        big = max(abs(h), abs(h_prev))
        if big > _HI or 0.0 < big < _LO:
            shift = -_RENORM_BITS if big > _HI else _RENORM_BITS
            h = math.ldexp(h, shift)
            h_prev = math.ldexp(h_prev, shift)
            e -= shift
        out.append(ScaledReal.make(h, e))
    return out


# ---------------------------------------------------------------------------
# Associated Laguerre, alpha = -1/2
# ---------------------------------------------------------------------------

_ALPHA = -0.5


def _laguerre_half_scaled_parts(k_max: int, s: float, x: float) -> tuple[list[float], list[int]]:
    """Mantissas/exponents of M_k = s**k L_k^(-1/2)(x/s), k = 0..k_max.

    Multiplying the Laguerre recurrence by s**(k+1) gives
    (k+1) M_{k+1} = ((2k+1+alpha) s - x) M_k - (k+alpha) s**2 M_{k-1},
    which has no division by ``s`` and so stays finite at s = 0.
    """
    mants = [1.0]
    exps = [0]
    if k_max == 0:
        return mants, exps
    s2 = s * s
    m_prev, m = 1.0, (1.0 + _ALPHA) * s - x
    e = 0
    mants.append(m)
    exps.append(0)
    for k in range(1, k_max):
        m_prev, m = m, (((2 * k + 1 + _ALPHA) * s - x) * m - (k + _ALPHA) * s2 * m_prev) / (k + 1)
        big = max(abs(m), abs(m_prev))
        if big > _HI or 0.0 < big < _LO:
            shift = -_RENORM_BITS if big > _HI else _RENORM_BITS
            m = math.ldexp(m, shift)
            m_prev = math.ldexp(m_prev, shift)
            e -= shift
        mants.append(m)
        exps.append(e)
    return mants, exps


def laguerre_half_scaled_all(k_max: int, s: float, x: float) -> list[ScaledReal]:
    """s**k L_k^(-1/2)(x/s) for k = 0..k_max, regular at s = 0."""
    if k_max < 0:
        raise ValueError("order must be non-negative")
    mants, exps = _laguerre_half_scaled_parts(k_max, float(s), float(x))
    return [ScaledReal.make(m, e) for m, e in zip(mants, exps)]


def laguerre_half_scaled(k: int, s: float, x: float) -> ScaledReal:
    """``s**k * L_k^(-1/2)(x / s)`` as a polynomial in (s, x).

    At ``s = 0`` this is the leading term ``(-x)**k / k!``.
    """
    if k < 0:
        raise ValueError("order must be non-negative")
    mants, exps = _laguerre_half_scaled_parts(k, float(s), float(x))
    return ScaledReal.make(mants[-1], exps[-1])


def laguerre_half(k: int, x: float) -> ScaledReal:
    """Associated Laguerre polynomial L_k^(-1/2)(x); negative x allowed."""
    return laguerre_half_scaled(k, 1.0, x)


def laguerre_general_zero(m: int, a: int) -> int:
    """L_m^(a)(0) = C(m + a, m) for non-negative integers."""
    if m < 0 or a < 0:
        raise ValueError("m and a must be non-negative")
    return math.comb(m + a, m)


def laguerre_half_zero(m: int) -> Fraction:
    """L_m^(-1/2)(0) = (2m-1)!!/(2m)!! exactly, with (-1)!! = 0!! = 1."""
    if m < 0:
        raise ValueError("m must be non-negative")
    return Fraction(math.comb(2 * m, m), 4**m)


def laguerre_half_zero_floats(m_max: int) -> list[float]:
    """Float values of L_m^(-1/2)(0) for m = 0..m_max (ratio recurrence)."""
    out = [1.0]
    for m in range(1, m_max + 1):
        out.append(out[-1] * (2 * m - 1) / (2 * m))
    return out


# ---------------------------------------------------------------------------
# Terminating Gauss hypergeometric sum
# ---------------------------------------------------------------------------


def _hyp2f1_terminating_exact(a: int, s: int, c: int, x: Fraction) -> Fraction:
    term = Fraction(1)
    total = Fraction(1)
    for l in range(1, s + 1):
        num = (a + l - 1) * (-s + l - 1)
        den = (c + l - 1) * l
        if num == 0:
            break
        if den == 0:
            raise DegenerateParameters(
                f"(c)_l vanishes at l={l} for c={c}; 2F1({a}, {-s}; {c}; x) undefined"
            )
        term = term * num * x / den
        total += term
    return total


def hyp2f1_terminating(a: int, s: int, c: int, x: float | Fraction) -> float:
    """2F1(a, -s; c; x) = sum_{l<=s} (a)_l (-s)_l / ((c)_l l!) x**l.

    Pochhammer symbols are built by incremental integer multiplication and
    the sum is accumulated exactly in rationals (``x`` is taken at its exact
    binary value), so the result is correctly rounded.

    Raises
    ------
    DegenerateParameters
        if ``(c)_l`` vanishes for some ``l <= s`` while the numerator does not.
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    return float(_hyp2f1_terminating_exact(a, s, c, Fraction(x)))
