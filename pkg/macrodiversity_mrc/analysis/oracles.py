"""
Numerical-integration references for the closed forms.

Every integral here is evaluated from its defining integrand with scipy's adaptive quadrature; semi-infinite
ranges are mapped onto [0, pi/2) by x = s tan(theta), with s matched to the decay of the integrand. Only the
special functions of specfun and the joint density are shared with the closed forms.
"""
import logging
import math
from typing import Callable, List, Optional, Sequence

from scipy import integrate, special

from macrodiversity_mrc.analysis import specfun
from macrodiversity_mrc.analysis.gamma_dist import MixtureCoefficients, gamma_cdf, joint_pdf
from macrodiversity_mrc.exceptions import InvalidParameterError, OracleFailureError, OutOfRegionError

LOGGER = logging.getLogger(__name__)

INNER_CLOSED = 'closed'
INNER_QUADRATURE = 'quadrature'
KIND_I1 = 'I1'
KIND_I2 = 'I2'

# arguments beyond which a Gaussian-decaying integrand is zero in double precision
_EXP_CUTOFF = 745.0


class QuadratureSpec:
    def __init__(self,
                 relative_tolerance: float = 1e-10,
                 absolute_tolerance: float = 1e-14,
                 max_subdivisions: int = 200,
                 transform: str = 'tan') -> None:
        if not relative_tolerance > 0.0 or not absolute_tolerance > 0.0:
            raise InvalidParameterError('Quadrature tolerances must be positive')
        if transform != 'tan':
            raise InvalidParameterError('Unsupported domain transform {!r}'.format(transform))
        self.relative_tolerance = relative_tolerance
        self.absolute_tolerance = absolute_tolerance
        self.max_subdivisions = max_subdivisions
        self.transform = transform

    def __repr__(self) -> str:
        return 'QuadratureSpec(relative_tolerance={!r}, absolute_tolerance={!r}, max_subdivisions={!r}, ' \
               'transform={!r})'.format(self.relative_tolerance, self.absolute_tolerance, self.max_subdivisions,
                                        self.transform)


DEFAULT_SPEC = QuadratureSpec()


def _quad(f: Callable[[float], float], lower: float, upper: float, spec: QuadratureSpec, what: str,
          points: Optional[Sequence[float]] = None) -> float:
    inside = sorted(point for point in (points or []) if lower < point < upper)
    value, error, info, *message = integrate.quad(f, lower, upper,
                                                  epsabs=spec.absolute_tolerance,
                                                  epsrel=spec.relative_tolerance,
                                                  limit=spec.max_subdivisions,
                                                  points=inside or None,
                                                  full_output=1)
    if not math.isfinite(value):
        raise OracleFailureError('{} evaluated to {!r}'.format(what, value))
    if message and error > max(spec.absolute_tolerance, 1e3 * spec.relative_tolerance * abs(value)):
        raise OracleFailureError('{} did not converge (estimated error {:.3e}): {}'.format(what, error, message[0]))
    return value


def _semi_infinite(f: Callable[[float], float], scale: float, spec: QuadratureSpec, what: str,
                   breakpoints: Sequence[float] = ()) -> float:
    """
    integral_0^inf f(x) dx through x = scale tan(theta)
    """
    def mapped(theta: float) -> float:
        x = scale * math.tan(theta)
        if not math.isfinite(x):
            return 0.0
        value = f(x)
        if value == 0.0:
            return 0.0
        return value * scale / math.cos(theta) ** 2

    angles = [math.atan(point / scale) for point in breakpoints if point > 0.0]
    return _quad(mapped, 0.0, math.pi / 2.0, spec, what, angles)


def _levels(coeffs: MixtureCoefficients) -> List[float]:
    ar = coeffs.arithmetic
    return [ar.to_float(q) / ar.to_float(p) for p, q in zip(coeffs.p1, coeffs.q)]


def cdf_via_quadrature(r: float, coeffs: MixtureCoefficients, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    P(g < r) as the integral of the joint density of (X, Y) over x >= 0, y >= 0, x^2 < r y.

    Y lies between min(D) X and max(D) X, so the inner integral runs over
    y in [max(x^2/r, min(D) x), max(D) x] with kinks at every D_i x.
    """
    if r < 0.0:
        raise InvalidParameterError('CDF threshold must be nonnegative, got {!r}'.format(r))
    if r == 0.0:
        return 0.0
    if math.isinf(r):
        return 1.0
    if coeffs.is_uniform:
        raise InvalidParameterError('The joint density is singular when every antenna sees the same level')

    levels = _levels(coeffs)
    low, high = min(levels), max(levels)
    scale = max(coeffs.arithmetic.to_float(p) for p in coeffs.p1)

    def inner(x: float) -> float:
        lower = max(x * x / r, low * x)
        upper = high * x
        if lower >= upper:
            return 0.0
        kinks = [level * x for level in levels]
        return _quad(lambda y: joint_pdf(x, y, coeffs), lower, upper, spec, 'Inner CDF integral', kinks)

    # the lower limit switches branch at x = r min(D) and the range closes at x = r max(D)
    return _semi_infinite(inner, scale, spec, 'CDF integral', [r * level for level in levels])


def _check_inner(inner: str) -> None:
    if inner not in (INNER_CLOSED, INNER_QUADRATURE):
        raise InvalidParameterError('inner must be {!r} or {!r}, got {!r}'.format(INNER_CLOSED, INNER_QUADRATURE,
                                                                                  inner))


def _cdf(coeffs: MixtureCoefficients, inner: str) -> Callable[[float], float]:
    _check_inner(inner)
    if inner == INNER_CLOSED:
        return lambda r: gamma_cdf(r, coeffs)
    return lambda r: cdf_via_quadrature(r, coeffs)


def w1_via_quadrature(a: float, b: float, coeffs: MixtureCoefficients, inner: str = INNER_CLOSED,
                      spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    E{a Q(sqrt(b g))} = a / sqrt(2 pi) integral_0^inf e^{-w^2/2} F(w^2/b) dw
    """
    if a == 0.0:
        return 0.0
    cdf = _cdf(coeffs, inner)

    def integrand(w: float) -> float:
        if w * w / 2.0 > _EXP_CUTOFF:
            return 0.0
        return math.exp(-w * w / 2.0) * cdf(w * w / b)

    return a / math.sqrt(2.0 * math.pi) * _semi_infinite(integrand, 1.0, spec, 'W1 integral')


def w2_via_quadrature(a: float, b: float, coeffs: MixtureCoefficients, inner: str = INNER_CLOSED,
                      spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    E{a Q^2(sqrt(b g))} = a sqrt(2/pi) integral_0^inf e^{-w^2/2} Q(w) F(w^2/b) dw
    """
    if a == 0.0:
        return 0.0
    cdf = _cdf(coeffs, inner)

    def integrand(w: float) -> float:
        if w * w / 2.0 > _EXP_CUTOFF:
            return 0.0
        return math.exp(-w * w / 2.0) * specfun.gaussian_q(w) * cdf(w * w / b)

    return a * math.sqrt(2.0 / math.pi) * _semi_infinite(integrand, 1.0, spec, 'W2 integral')


def integral_via_quadrature(kind: str, alpha: float, beta: float, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """
    I1: integral_0^inf x e^{-beta x^2} Q(x) erfi(alpha x) dx, for 1 + 2 beta > 2 alpha^2
    I2: integral_0^inf x e^{beta x^2} Q(x) erfc(alpha x) dx, for alpha >= 0 and 1 + 2 alpha^2 > 2 beta

    erfi and erfc are carried as dawson and erfcx with their Gaussian factors merged into log Q, so the
    integrand never overflows.
    """
    if kind == KIND_I1:
        decay = 0.5 + beta - alpha * alpha
        if not decay > 0.0:
            raise OutOfRegionError('I1 diverges for alpha={!r}, beta={!r}'.format(alpha, beta))
        if alpha == 0.0:
            return 0.0

        def integrand(x: float) -> float:
            exponent = (alpha * alpha - beta) * x * x + special.log_ndtr(-x)
            if exponent < -_EXP_CUTOFF:
                return 0.0
            return x * specfun.TWO_OVER_SQRT_PI * specfun.dawson(alpha * x) * math.exp(exponent)
    elif kind == KIND_I2:
        decay = 0.5 + alpha * alpha - beta
        if not alpha >= 0.0 or not decay > 0.0:
            raise OutOfRegionError('I2 diverges for alpha={!r}, beta={!r}'.format(alpha, beta))

        def integrand(x: float) -> float:
            exponent = (beta - alpha * alpha) * x * x + special.log_ndtr(-x)
            if exponent < -_EXP_CUTOFF:
                return 0.0
            return x * specfun.erfcx(alpha * x) * math.exp(exponent)
    else:
        raise InvalidParameterError('kind must be {!r} or {!r}, got {!r}'.format(KIND_I1, KIND_I2, kind))

    if decay < 1e-6:
        LOGGER.warning('{} at alpha={!r}, beta={!r} is within {:.1e} of its divergence boundary'
                       .format(kind, alpha, beta, decay))
    return _semi_infinite(integrand, 1.0 / math.sqrt(decay), spec, '{} integral'.format(kind))
