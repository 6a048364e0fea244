"""Exception types raised by the library."""


class HusimiError(Exception):
    """Base class for all library errors."""


class DegenerateParameters(HusimiError, ValueError):
    """A terminating hypergeometric sum hits a vanishing denominator."""


class OutsideValidityRegion(HusimiError, ValueError):
    """The Hermite-product marginal form needs a real ``beta``."""


class ConvergenceDomain(HusimiError, ValueError):
    """The bilinear Hermite resummation requires ``|2 a1 a2 a3| < 1``."""


class NoConvergence(HusimiError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


class KernelNotIntegrable(HusimiError, ValueError):
    """The propagated Fourier integrand is not a decaying Gaussian."""
