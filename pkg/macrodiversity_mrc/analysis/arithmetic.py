import logging
import math
from typing import Any, Callable, Iterable, List, Sequence

from mpmath.ctx_mp import MPContext

from macrodiversity_mrc.analysis import specfun
from macrodiversity_mrc.base.base_arithmetic import BaseArithmetic
from macrodiversity_mrc.exceptions import AccuracyError

LOGGER = logging.getLogger(__name__)

CANCELLATION_DIGITS = 4
DOUBLE_DIGITS = 16
GUARD_DIGITS = 8
EXTENDED_BASE_DIGITS = 30
MAX_EXTENDED_DIGITS = 1200


class DoubleArithmetic(BaseArithmetic):
    digits = 15

    def number(self, value: Any) -> float:
        return float(value)

    def to_float(self, value: Any) -> float:
        return float(value)

    @property
    def pi(self) -> float:
        return math.pi

    def sqrt(self, x: float) -> float:
        return math.sqrt(x)

    def exp(self, x: float) -> float:
        return math.exp(x)

    def expm1(self, x: float) -> float:
        return math.expm1(x)

    def atan(self, x: float) -> float:
        return math.atan(x)

    def atan2(self, y: float, x: float) -> float:
        return math.atan2(y, x)

    def atanh(self, x: float) -> float:
        return math.atanh(x)

    def erfcx(self, x: float) -> float:
        return float(specfun.erfcx(x))

    def dawson(self, x: float) -> float:
        return float(specfun.dawson(x))

    def exp_erfcx(self, exponent: float, x: float) -> float:
        return specfun.ScaledExpProduct(exponent, float(specfun.erfcx(x))).value()

    def exp_dawson(self, exponent: float, x: float) -> float:
        return specfun.ScaledExpProduct(exponent, float(specfun.dawson(x))).value()

    def fsum(self, values: Iterable[float]) -> float:
        return math.fsum(values)

    def is_finite(self, value: Any) -> bool:
        return math.isfinite(value)

    def __repr__(self) -> str:
        return 'DoubleArithmetic()'


class ExtendedArithmetic(BaseArithmetic):
    """
    mpmath arithmetic in a private context, so concurrent evaluations at different precisions do not
    interfere through the global mpmath precision.
    """
    def __init__(self, dps: int) -> None:
        self.digits = int(dps)
        self._context = MPContext()
        self._context.dps = self.digits

    def number(self, value: Any) -> Any:
        return self._context.mpf(value)

    def to_float(self, value: Any) -> float:
        return float(value)

    @property
    def pi(self) -> Any:
        return +self._context.pi

    def sqrt(self, x: Any) -> Any:
        return self._context.sqrt(x)

    def exp(self, x: Any) -> Any:
        return self._context.exp(x)

    def expm1(self, x: Any) -> Any:
        return self._context.expm1(x)

    def atan(self, x: Any) -> Any:
        return self._context.atan(x)

    def atan2(self, y: Any, x: Any) -> Any:
        return self._context.atan2(y, x)

    def atanh(self, x: Any) -> Any:
        return self._context.atanh(x)

    def erfcx(self, x: Any) -> Any:
        ctx = self._context
        return ctx.exp(x * x) * ctx.erfc(x)

    def dawson(self, x: Any) -> Any:
        ctx = self._context
        return ctx.sqrt(ctx.pi) / 2 * ctx.exp(-x * x) * ctx.erfi(x)

    def fsum(self, values: Iterable[Any]) -> Any:
        return self._context.fsum(values)

    def is_finite(self, value: Any) -> bool:
        return bool(self._context.isfinite(value))

    def __repr__(self) -> str:
        return 'ExtendedArithmetic(dps={})'.format(self.digits)


DOUBLE = DoubleArithmetic()


def lost_digits(magnitude: float, value: float) -> float:
    """
    Decimal digits cancelled when terms whose absolute values sum to magnitude add up to value
    """
    if magnitude == 0.0:
        return 0.0
    if value == 0.0 or not math.isfinite(magnitude) or not math.isfinite(value):
        return math.inf
    return max(0.0, math.log10(magnitude / abs(value)))


def required_digits(magnitude: float, value: float) -> int:
    """
    Working precision needed so that a signed sum of terms with the given absolute magnitude still resolves
    value to double precision.
    """
    lost = lost_digits(magnitude, value)
    if math.isinf(lost):
        return 2 * EXTENDED_BASE_DIGITS
    return max(EXTENDED_BASE_DIGITS, int(math.ceil(lost)) + DOUBLE_DIGITS + GUARD_DIGITS)


class ResolvedSum(object):
    """
    A signed sum resolved to double precision, with the per-term values kept for reporting
    """
    def __init__(self, value: float, terms: List[float], digits: int) -> None:
        self.value = value
        self.terms = terms
        self.digits = digits

    def __repr__(self) -> str:
        return 'ResolvedSum(value={!r}, terms={}, digits={})'.format(self.value, len(self.terms), self.digits)


def _sum_terms(arithmetic: BaseArithmetic, terms: Sequence[Any]) -> Any:
    total = arithmetic.fsum(terms)
    magnitude = arithmetic.fsum(abs(term) for term in terms)
    return total, magnitude


def resolve_terms(evaluate: Callable[[BaseArithmetic], Sequence[Any]],
                  cancellation_digits: int = CANCELLATION_DIGITS,
                  conditioning: float = 0.0) -> ResolvedSum:
    """
    Sums the terms produced by evaluate, first in double precision. When more than cancellation_digits digits
    cancel, or double precision fails outright, evaluate is called again with extended arithmetic at a
    precision derived from the observed cancellation, until the sum is resolved.

    :param evaluate: builds the terms of the sum with the arithmetic it is given
    :param cancellation_digits: digits of cancellation tolerated in double precision
    :param conditioning: digits already lost while building the terms, counted on top of the cancellation
    :return: ResolvedSum
    """
    conditioning = max(0.0, conditioning)
    try:
        terms = list(evaluate(DOUBLE))
        total, magnitude = _sum_terms(DOUBLE, terms)
        lost = lost_digits(magnitude, total) + conditioning
    except (AccuracyError, OverflowError, ValueError, ZeroDivisionError) as e:
        LOGGER.debug('Double precision evaluation failed: {}'.format(e))
        total, magnitude, lost = math.nan, math.inf, math.inf

    if lost <= cancellation_digits:
        return ResolvedSum(float(total), [float(term) for term in terms], DOUBLE.digits)

    extra = int(math.ceil(conditioning))
    if math.isfinite(magnitude):
        dps = required_digits(magnitude, total) + extra
    else:
        dps = 2 * EXTENDED_BASE_DIGITS + extra
    while dps <= MAX_EXTENDED_DIGITS:
        LOGGER.debug('Cancellation of {:.1f} digits, evaluating with {} digits'.format(lost, dps))
        arithmetic = ExtendedArithmetic(dps)
        terms = list(evaluate(arithmetic))
        total, magnitude = _sum_terms(arithmetic, terms)
        if magnitude == 0:
            return ResolvedSum(0.0, [0.0 for _ in terms], dps)
        lost = lost_digits(float(magnitude), float(total)) + conditioning
        if dps - lost >= DOUBLE_DIGITS + GUARD_DIGITS // 2:
            return ResolvedSum(float(total), [float(term) for term in terms], dps)
        dps = 2 * dps if math.isinf(lost) else max(dps + GUARD_DIGITS,
                                                   required_digits(float(magnitude), float(total)) + extra)

    raise AccuracyError('Signed sum could not be resolved within {} digits'.format(MAX_EXTENDED_DIGITS))
