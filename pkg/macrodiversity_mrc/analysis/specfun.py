"""
Gaussian Q-function and the error-function family in the scaled forms used by the closed-form expressions.

All functions accept scalars or numpy arrays and evaluate in double precision through scipy.special.
"""
import logging
import math
from typing import Union

import numpy as np
from scipy import special

from macrodiversity_mrc.exceptions import AccuracyError, InvalidParameterError

LOGGER = logging.getLogger(__name__)

RealLike = Union[float, np.ndarray]

SQRT2 = math.sqrt(2.0)
TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)

# e^{x^2} overflows a double beyond this argument
ERFI_MAX_ARGUMENT = math.sqrt(math.log(np.finfo(float).max)) - 0.05
_LOG_MAX = math.log(np.finfo(float).max)
_LOG_MIN = math.log(np.finfo(float).tiny) - 36.0


class ScaledExpProduct(object):
    """
    A value represented as mantissa * e^{log_scale}, so that an exponential prefactor and an error-function
    factor can be combined before the product is formed.
    """
    def __init__(self, log_scale: float, mantissa: float) -> None:
        if not math.isfinite(mantissa):
            raise InvalidParameterError('mantissa must be finite, got {}'.format(mantissa))
        self.log_scale = float(log_scale)
        self.mantissa = float(mantissa)

    def value(self) -> float:
        if self.mantissa == 0.0:
            return 0.0
        log_abs = self.log_scale + math.log(abs(self.mantissa))
        if log_abs > _LOG_MAX:
            raise AccuracyError('e^{:.4g} * {:.4g} is not representable'.format(self.log_scale, self.mantissa))
        if log_abs < _LOG_MIN:
            return math.copysign(0.0, self.mantissa)
        return math.copysign(math.exp(log_abs), self.mantissa)

    def scaled(self, factor: float) -> 'ScaledExpProduct':
        return ScaledExpProduct(self.log_scale, self.mantissa * factor)

    def __mul__(self, other: 'ScaledExpProduct') -> 'ScaledExpProduct':
        return ScaledExpProduct(self.log_scale + other.log_scale, self.mantissa * other.mantissa)

    def __repr__(self) -> str:
        return 'ScaledExpProduct(log_scale={!r}, mantissa={!r})'.format(self.log_scale, self.mantissa)


def gaussian_q(x: RealLike) -> RealLike:
    """
    Gaussian tail probability Q(x) = P(N(0, 1) > x)
    """
    return 0.5 * special.erfc(np.divide(x, SQRT2))


def erf(x: RealLike) -> RealLike:
    return special.erf(x)


def erfc(x: RealLike) -> RealLike:
    return special.erfc(x)


def erfi(x: RealLike) -> RealLike:
    """
    Imaginary error function erfi(x) = -j erf(jx).

    :raises AccuracyError: when |x| is large enough for e^{x^2} to overflow; use dawson instead
    """
    if np.any(np.abs(x) > ERFI_MAX_ARGUMENT):
        raise AccuracyError('erfi overflows for |x| > {:.3f}; use the scaled form'.format(ERFI_MAX_ARGUMENT))
    return special.erfi(x)


def dawson(x: RealLike) -> RealLike:
    """
    Dawson function F(x) = e^{-x^2} * integral_0^x e^{t^2} dt, so that erfi(x) = (2/sqrt(pi)) e^{x^2} F(x)
    """
    return special.dawsn(x)


def erfcx(x: RealLike) -> RealLike:
    """
    Scaled complementary error function e^{x^2} erfc(x)
    """
    return special.erfcx(x)

