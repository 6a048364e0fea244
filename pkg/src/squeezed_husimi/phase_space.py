"""Squeeze frames, phase-space points and the Fock-state Husimi function."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .specfun import ScaledReal

__all__ = [
    "SINGULAR_THRESHOLD",
    "SqueezeFrame",
    "PhasePoint",
    "RotatedPoint",
    "Kind",
    "Flag",
    "DistributionSample",
    "rotate",
    "husimi_unsqueezed",
    "husimi_fock",
    "husimi_fock_laguerre",
    "husimi_fock_series",
    "husimi_sum_over_n",
]

#: |lambda - 1| below this switches to the Laguerre form, which is regular at 1.
SINGULAR_THRESHOLD = 1e-6

_LN2 = math.log(2.0)


@dataclass(frozen=True)
class SqueezeFrame:
    """Squeeze parameter ``lam`` (> 0) and rotation angle ``phi`` in radians."""

    lam: float
    phi: float
    cos2: float = field(init=False, repr=False, compare=False)
    sin2: float = field(init=False, repr=False, compare=False)
    sin_phi: float = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        lam = float(self.lam)
        phi = float(self.phi)
        if not (math.isfinite(lam) and lam > 0):
            raise ValueError(f"squeeze parameter must be positive and finite, got {self.lam!r}")
        if not math.isfinite(phi):
            raise ValueError(f"rotation angle must be finite, got {self.phi!r}")
        c = math.cos(phi / 2)
        s = math.sin(phi / 2)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "cos2", c * c)
        object.__setattr__(self, "sin2", s * s)
        object.__setattr__(self, "sin_phi", math.sin(phi))

    @classmethod
    def from_degrees(cls, lam: float, phi_deg: float) -> "SqueezeFrame":
        return cls(lam, math.radians(phi_deg))

    @property
    def phi_deg(self) -> float:
        return math.degrees(self.phi)

    def reciprocal(self) -> "SqueezeFrame":
        """Frame (1/lam, -phi) used by the reciprocal symmetry."""
        return SqueezeFrame(1.0 / self.lam, -self.phi)


@dataclass(frozen=True)
class PhasePoint:
    p: float
    q: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise ValueError("phase-space coordinates must be finite")


@dataclass(frozen=True)
class RotatedPoint:
    p_r: float
    q_r: float


class Kind(str, enum.Enum):
    HUSIMI = "Husimi"
    MARGINAL_Q = "MarginalQ"
    MARGINAL_P = "MarginalP"
    CORR_TOTAL = "CorrTotal"
    CORR_C1 = "CorrC1"
    CORR_C2 = "CorrC2"
    CORR_C3 = "CorrC3"


class Flag(str, enum.Enum):
    SINGULAR_FALLBACK = "SingularFallback"
    RECIPROCAL_SYMMETRY = "ReciprocalSymmetryUsed"
    TRUNCATED_SERIES = "TruncatedSeries"


@dataclass(frozen=True)
class DistributionSample:
    """One evaluated distribution value with its inputs and diagnostics."""

    kind: Kind
    n: int
    frame: SqueezeFrame
    point: PhasePoint
    value: float
    flags: frozenset[Flag] = frozenset()

    def __float__(self) -> float:
        return self.value

    def flag_string(self) -> str:
        return "|".join(sorted(f.value for f in self.flags))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "lambda": self.frame.lam,
            "phi": self.frame.phi,
            "p": self.point.p,
            "q": self.point.q,
            "value": self.value,
            "flags": sorted(f.value for f in self.flags),
        }


def rotate(point: PhasePoint, frame: SqueezeFrame) -> RotatedPoint:
    """Rotated quadratures (p_r, q_r) for the half-angle phi/2."""
    c = math.cos(frame.phi / 2)
    s = math.sin(frame.phi / 2)
    return RotatedPoint(p_r=point.p * c - point.q * s, q_r=point.q * c + point.p * s)


def husimi_unsqueezed(n: int, point: PhasePoint) -> float:
    """Poisson form (1/n!) r**n exp(-r) with r = (p**2 + q**2)/2."""
    _check_n(n)
    r = 0.5 * (point.p**2 + point.q**2)
    if n == 0:
        return math.exp(-r)
    if r == 0.0:
        return 0.0
    return math.exp(n * math.log(r) - math.lgamma(n + 1) - r)


def _check_n(n: int) -> None:
    if n < 0 or int(n) != n:
        raise ValueError(f"photon number must be a non-negative integer, got {n!r}")


def _route(point: PhasePoint, frame: SqueezeFrame) -> tuple[RotatedPoint, float, bool]:
    """Rotated point and lam >= 1, swapping p <-> q and lam -> 1/lam if needed.

    P(p, q; lam, phi) = P(q, p; 1/lam, -phi) and the rotation by -phi maps
    (q, p) to (p_r', q_r') = (q_r, p_r).
    """
    rp = rotate(point, frame)
    if frame.lam < 1.0:
        return RotatedPoint(p_r=rp.q_r, q_r=rp.p_r), 1.0 / frame.lam, True
    return rp, frame.lam, False


def _log_prefactor(lam: float) -> float:
    return math.log(2.0 * math.sqrt(lam) / (lam + 1.0))


def _husimi_hermite(n: int, p_r: float, q_r: float, lam: float) -> float:
    # lam > 1 strictly; the Hermite argument stays finite.
    root = math.sqrt((lam - 1.0) * (lam + 1.0))
    z = complex(lam * q_r, p_r) / root
    h, e = specfun._hermite_pair(n, z)
    mod2 = h.real * h.real + h.imag * h.imag
    if mod2 == 0.0:
        return 0.0
    log_val = (
        _log_prefactor(lam)
        + n * (math.log(lam - 1.0) - math.log(lam + 1.0) - _LN2)
        - math.lgamma(n + 1)
        + math.log(mod2)
        + 2 * e * _LN2
        - (lam * q_r * q_r + p_r * p_r) / (lam + 1.0)
    )
    return math.exp(log_val)


def _husimi_laguerre(n: int, p_r: float, q_r: float, lam: float) -> float:
    # Every bracket ((lam-1)/(lam+1))**k is folded into a scaled Laguerre,
    # so lam = 1 and lam < 1 need no special treatment.
    t = (lam - 1.0) / (lam + 1.0)
    lp1_sq = (lam + 1.0) ** 2
    a = 2.0 * lam * lam * q_r * q_r / lp1_sq
    b = -2.0 * p_r * p_r / lp1_sq
    am, ae = specfun._laguerre_half_scaled_parts(n, t, a)
    bm, be = specfun._laguerre_half_scaled_parts(n, t, b)
    mants = [(-am[k] if k & 1 else am[k]) * bm[n - k] for k in range(n + 1)]
    exps = [ae[k] + be[n - k] for k in range(n + 1)]
    m, e = specfun._sum_parts(mants, exps)
    if m == 0.0:
        return 0.0
    log_val = (
        _log_prefactor(lam)
        + math.log(abs(m))
        + e * _LN2
        - (lam * q_r * q_r + p_r * p_r) / (lam + 1.0)
    )
    return math.copysign(math.exp(log_val), m)


def husimi_fock(n: int, point: PhasePoint, frame: SqueezeFrame) -> DistributionSample:
    """Husimi function P_n(p, q; lam, phi) of the Fock state |n>.

    For ``lam > 1`` this is the closed form with |H_n(z)|**2,
    ``z = (lam q_r + i p_r) / sqrt(lam**2 - 1)``, combined in log-domain.
    ``lam < 1`` is mapped onto ``1/lam`` via P(p,q;lam,phi) = P(q,p;1/lam,-phi)
    so the square root never goes imaginary. Within ``SINGULAR_THRESHOLD``
    of ``lam = 1`` the Laguerre form is used instead.
    """
    _check_n(n)
    flags: set[Flag] = set()
    rp, lam, swapped = _route(point, frame)
    if swapped:
        flags.add(Flag.RECIPROCAL_SYMMETRY)
    if lam - 1.0 < SINGULAR_THRESHOLD:
        flags.add(Flag.SINGULAR_FALLBACK)
        value = max(_husimi_laguerre(n, rp.p_r, rp.q_r, lam), 0.0)
    else:
        value = _husimi_hermite(n, rp.p_r, rp.q_r, lam)
    return DistributionSample(Kind.HUSIMI, n, frame, point, value, frozenset(flags))


def husimi_fock_laguerre(n: int, point: PhasePoint, frame: SqueezeFrame) -> float:
    """P_n from the alternating Laguerre-product sum.

    Evaluated directly at the given ``lam`` (no reciprocal routing), which
    makes it an independent path for checking :func:`husimi_fock`.
    """
    _check_n(n)
    rp = rotate(point, frame)
    return _husimi_laguerre(n, rp.p_r, rp.q_r, frame.lam)


def husimi_fock_series(n_max: int, p, q, frame: SqueezeFrame) -> np.ndarray:
    """P_0 .. P_{n_max} at one or many points in a single recurrence pass.

    Returns an array of shape ``(n_max + 1,) + broadcast(p, q).shape``.

    With ``t = (lam-1)/(lam+1)`` and ``w = (lam q_r + i p_r)/(lam+1)`` the
    normalized quantity ``g_n = H_n(z) (t/2)**(n/2) / sqrt(n!)`` obeys
    ``g_{n+1} = w sqrt(2/(n+1)) g_n - t sqrt(n/(n+1)) g_{n-1}``, which is
    regular at lam = 1 (where it reduces to the Poisson weights).
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    p_arr, q_arr = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    c = math.cos(frame.phi / 2)
    s = math.sin(frame.phi / 2)
    p_r = p_arr * c - q_arr * s
    q_r = q_arr * c + p_arr * s
    lam = frame.lam
    if lam < 1.0:
        p_r, q_r, lam = q_r, p_r, 1.0 / lam
    t = (lam - 1.0) / (lam + 1.0)
    w = (lam * q_r + 1j * p_r) / (lam + 1.0)
    base_log = _log_prefactor(lam) - (lam * q_r * q_r + p_r * p_r) / (lam + 1.0)

    shape = p_arr.shape
    out = np.empty((n_max + 1,) + shape)
    g_prev = np.zeros(shape, dtype=complex)
    g = np.ones(shape, dtype=complex)
    expo = np.zeros(shape, dtype=np.int64)
    with np.errstate(divide="ignore", under="ignore"):
        out[0] = np.exp(base_log)
        for k in range(n_max):
            g_prev, g = g, w * math.sqrt(2.0 / (k + 1)) * g - t * math.sqrt(k / (k + 1)) * g_prev
            big = np.maximum(np.abs(g), np.abs(g_prev))
            _, shift = np.frexp(big)
            shift = np.where(big > 0, shift, 0)
            g = np.ldexp(g.real, -shift) + 1j * np.ldexp(g.imag, -shift)
            g_prev = np.ldexp(g_prev.real, -shift) + 1j * np.ldexp(g_prev.imag, -shift)
            expo = expo + shift
            mod2 = g.real * g.real + g.imag * g.imag
            out[k + 1] = np.where(
                mod2 > 0, np.exp(base_log + np.log(np.where(mod2 > 0, mod2, 1.0)) + 2 * expo * _LN2), 0.0
            )
    return out


def husimi_sum_over_n(point: PhasePoint, frame: SqueezeFrame, n_max: int) -> float:
    """Partial sum of P_n over n = 0..n_max (tends to 1)."""
    series = husimi_fock_series(n_max, point.p, point.q, frame)
    return math.fsum(series.tolist())
