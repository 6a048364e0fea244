"""Fourier-domain squeeze-propagation kernels.

A distribution at squeeze ``lam`` and angle ``phi`` is obtained from the
unsqueezed one by multiplying its Fourier transform (conjugate variables
``xi`` for q and ``eta`` for p, phase ``exp(i(eta p - xi q))``, measure
``d xi d eta / 2 pi``) with the Gaussian kernel K.  K factorizes into a
q-part, a p-part and a cross term that carries the rotation-induced
correlations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .phase_space import SqueezeFrame

__all__ = [
    "FourierPoint",
    "kernel_exponent_matrix",
    "kernel_K",
    "kernel_kQ",
    "kernel_kR",
    "kernel_kC",
    "kernel_glauber_flip",
    "ft_husimi_fock",
    "ft_marginal_q",
    "propagated_form",
    "is_integrable",
]

_SQRT1_2 = math.sqrt(0.5)


@dataclass(frozen=True)
class FourierPoint:
    xi: float
    eta: float


def _trig(phi: float) -> tuple[float, float, float]:
    c = math.cos(phi / 2)
    s = math.sin(phi / 2)
    return c * c, s * s, math.sin(phi)


def kernel_exponent_matrix(lam: float, phi: float) -> np.ndarray:
    """Symmetric B with K = exp(-[xi, eta] B [xi, eta]^T).

    ``lam`` may be any non-zero real here; a negative value gives the kernel
    that maps onto the Glauber-Sudarshan function.
    """
    if lam == 0:
        raise ValueError("lambda must be non-zero")
    c2, s2, sp = _trig(phi)
    f = (lam - 1.0) / (4.0 * lam)
    return f * np.array(
        [
            [lam * s2 - c2, 0.5 * (lam + 1.0) * sp],
            [0.5 * (lam + 1.0) * sp, lam * c2 - s2],
        ]
    )


def _kernel_exponent(xi: float, eta: float, lam: float, phi: float) -> float:
    c2, s2, sp = _trig(phi)
    return -(lam - 1.0) / (4.0 * lam) * (
        (lam * s2 - c2) * xi * xi + (lam * c2 - s2) * eta * eta + (lam + 1.0) * sp * xi * eta
    )


def kernel_K(fp: FourierPoint, frame: SqueezeFrame) -> float:
    """Full propagation kernel K(xi, eta; lam, phi)."""
    return math.exp(_kernel_exponent(fp.xi, fp.eta, frame.lam, frame.phi))


def kernel_kQ(xi: float, frame: SqueezeFrame) -> float:
    lam = frame.lam
    return math.exp(-(lam - 1.0) / (4.0 * lam) * (lam * frame.sin2 - frame.cos2) * xi * xi)


def kernel_kR(eta: float, frame: SqueezeFrame) -> float:
    lam = frame.lam
    return math.exp(-(lam - 1.0) / (4.0 * lam) * (lam * frame.cos2 - frame.sin2) * eta * eta)


def kernel_kC(fp: FourierPoint, frame: SqueezeFrame) -> float:
    """Cross factor; identically 1 when sin(phi) = 0 or lam = 1."""
    lam = frame.lam
    return math.exp(-((lam * lam - 1.0) / (4.0 * lam) * frame.sin_phi) * fp.xi * fp.eta)


def kernel_glauber_flip(fp: FourierPoint, lam: float) -> tuple[float, float]:
    """Both sides of exp((xi^2/lam + lam eta^2)/2) K(lam, 0) = exp((lam+1)(eta^2 + xi^2/lam)/4).

    The right side is also K(xi, eta; -lam, 0).
    """
    if not lam > 0:
        raise ValueError("lambda must be positive")
    xi, eta = fp.xi, fp.eta
    lhs = math.exp(0.5 * (xi * xi / lam + lam * eta * eta) + _kernel_exponent(xi, eta, lam, 0.0))
    rhs = math.exp(0.25 * (lam + 1.0) * (eta * eta + xi * xi / lam))
    return lhs, rhs


def ft_husimi_fock(n: int, fp: FourierPoint) -> float:
    """Fourier transform of the unsqueezed Fock-state Husimi function.

    (-1)^n / (4^n n!) sum_k C(n,k) H_{2k}(xi/sqrt2) H_{2(n-k)}(eta/sqrt2) exp(-(xi^2+eta^2)/2)
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    hx = specfun.hermite_real_all(2 * n, fp.xi * _SQRT1_2)
    he = specfun.hermite_real_all(2 * n, fp.eta * _SQRT1_2)
    terms = [math.comb(n, k) * hx[2 * k] * he[2 * (n - k)] for k in range(n + 1)]
    total = specfun.scaled_sum(terms)
    if total.mantissa == 0.0:
        return 0.0
    log_val = (
        total.log_abs()
        - n * math.log(4.0)
        - math.lgamma(n + 1)
        - 0.5 * (fp.xi * fp.xi + fp.eta * fp.eta)
    )
    sign = total.sign * (-1) ** n
    return math.copysign(math.exp(log_val), sign)


def ft_marginal_q(n: int, xi: float) -> float:
    """Fourier transform of the unsqueezed marginal Q_n(q).

    sum_k L_{n-k}^(-1/2)(0) L_k^(-1/2)(xi^2/2) exp(-xi^2/2); by symmetry the
    same function is the transform of R_n(p).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    zeros = specfun.laguerre_half_zero_floats(n)
    lag = specfun.laguerre_half_scaled_all(n, 1.0, 0.5 * xi * xi)
    total = specfun.scaled_sum(zeros[n - k] * lag[k] for k in range(n + 1))
    if total.mantissa == 0.0:
        return 0.0
    return math.copysign(math.exp(total.log_abs() - 0.5 * xi * xi), total.sign)


def propagated_form(lam: float, phi: float) -> np.ndarray:
    """Quadratic form A of K(lam, phi) * exp(-(xi^2 + eta^2)/2) = exp(-v A v^T)."""
    return kernel_exponent_matrix(lam, phi) + 0.5 * np.eye(2)


def is_integrable(lam: float, phi: float, margin: float = 1e-9) -> bool:
    """True when the propagated Gaussian envelope decays in every direction."""
    return bool(np.linalg.eigvalsh(propagated_form(lam, phi)).min() > margin)
