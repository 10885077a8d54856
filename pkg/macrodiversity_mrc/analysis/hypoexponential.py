"""
Sum of independent exponential variables with distinct means.

Used whenever the interference-plus-noise level is the same on every antenna, in which case the combiner
SINR reduces to h^H h / D.
"""
import logging
import math
from typing import Any, List, Sequence

from scipy import integrate

from macrodiversity_mrc.analysis import arithmetic as arith
from macrodiversity_mrc.analysis.powermodel import coincident_groups
from macrodiversity_mrc.base.base_arithmetic import BaseArithmetic
from macrodiversity_mrc.exceptions import CoincidentPowerError, InvalidParameterError, OracleFailureError

LOGGER = logging.getLogger(__name__)

# smallest relative gap between means for which the partial-fraction closed forms are used for averages
HYPOEXP_SEPARATION = 1e-2


def _check_means(means: Sequence[float]) -> List[float]:
    values = [float(mean) for mean in means]
    if not values:
        raise InvalidParameterError('At least one mean is required')
    if any(not mean > 0.0 for mean in values):
        raise InvalidParameterError('Means must be positive, got {!r}'.format(values))
    return values


def partial_fraction_weights(means: Sequence[float], arithmetic: BaseArithmetic = arith.DOUBLE) -> List[Any]:
    """
    pi_i = prod_{k != i} m_i / (m_i - m_k), the weights of the distinct-mean density sum_i pi_i e^{-x/m_i}/m_i

    :raises CoincidentPowerError: when two means are equal
    """
    values = _check_means(means)
    groups = coincident_groups(values, tolerance=0.0)
    if groups:
        raise CoincidentPowerError(groups)

    numbers = [arithmetic.number(value) for value in values]
    weights = []
    for i, m_i in enumerate(numbers):
        weight = arithmetic.number(1)
        for k, m_k in enumerate(numbers):
            if k != i:
                weight = weight * m_i / (m_i - m_k)
        weights.append(weight)
    return weights


def well_separated(means: Sequence[float], separation: float = HYPOEXP_SEPARATION) -> bool:
    values = sorted(_check_means(means))
    return all(values[i + 1] - values[i] >= separation * values[i + 1] for i in range(len(values) - 1))


def hypoexponential_pdf(x: float, means: Sequence[float]) -> float:
    if x < 0.0:
        return 0.0

    def evaluate(arithmetic: BaseArithmetic) -> List[Any]:
        weights = partial_fraction_weights(means, arithmetic)
        x_ = arithmetic.number(x)
        return [weight * arithmetic.exp(-x_ / arithmetic.number(mean)) / arithmetic.number(mean)
                for weight, mean in zip(weights, means)]

    return max(0.0, arith.resolve_terms(evaluate).value)


def hypoexponential_cdf(r: float, means: Sequence[float]) -> float:
    """
    P(sum of exponentials < r) = sum_i pi_i (1 - e^{-r/m_i})

    :param r: threshold
    :param means: pairwise distinct means; exactly equal means raise CoincidentPowerError
    :return: probability
    """
    _check_means(means)
    if r <= 0.0:
        return 0.0
    if math.isinf(r):
        return 1.0

    def evaluate(arithmetic: BaseArithmetic) -> List[Any]:
        weights = partial_fraction_weights(means, arithmetic)
        r_ = arithmetic.number(r)
        return [-weight * arithmetic.expm1(-r_ / arithmetic.number(mean)) for weight, mean in zip(weights, means)]

    value = arith.resolve_terms(evaluate).value
    return min(1.0, max(0.0, value))


def _q_terms(a: float, b: float, means: Sequence[float], squared: bool, arithmetic: BaseArithmetic) -> List[Any]:
    weights = partial_fraction_weights(means, arithmetic)
    a_, b_ = arithmetic.number(a), arithmetic.number(b)
    terms = []
    for weight, mean in zip(weights, means):
        c = 1 / (b_ * arithmetic.number(mean))
        t = arithmetic.sqrt(1 + 2 * c)
        t_minus_one = 2 * c / (t + 1)
        if squared:
            value = t_minus_one / (4 * t) - arithmetic.atan(t_minus_one / (t + 1)) / (arithmetic.pi * t)
            terms.append(weight * a_ * value)
        else:
            terms.append(weight * a_ / 2 * t_minus_one / t)
    return terms


def craig_average(a: float, b: float, means: Sequence[float], squared: bool = False) -> float:
    """
    E{a Q(sqrt(b g))} (or E{a Q^2(sqrt(b g))}) through Craig's form, valid for any means including equal ones
    """
    values = _check_means(means)
    half_b = 0.5 * b

    def integrand(theta: float) -> float:
        s2 = math.sin(theta) ** 2
        product = 1.0
        for mean in values:
            product *= s2 / (s2 + half_b * mean)
        return product

    upper = math.pi / 4.0 if squared else math.pi / 2.0
    value, error, info, *message = integrate.quad(integrand, 0.0, upper, epsabs=0.0, epsrel=1e-12, limit=200,
                                                   full_output=1)
    if message and error > 1e-8 * abs(value):
        raise OracleFailureError('Craig integral did not converge: {}'.format(message[0]))
    return a * value / math.pi


def hypoexponential_q_average(a: float, b: float, means: Sequence[float]) -> float:
    """
    E{a Q(sqrt(b g))} for a hypoexponential g with the given branch means
    """
    if a == 0.0:
        return 0.0
    if not well_separated(means):
        return craig_average(a, b, means)
    return arith.resolve_terms(lambda arithmetic: _q_terms(a, b, means, False, arithmetic)).value


def hypoexponential_q2_average(a: float, b: float, means: Sequence[float]) -> float:
    """
    E{a Q^2(sqrt(b g))} for a hypoexponential g with the given branch means
    """
    if a == 0.0:
        return 0.0
    if not well_separated(means):
        return craig_average(a, b, means, squared=True)
    return arith.resolve_terms(lambda arithmetic: _q_terms(a, b, means, True, arithmetic)).value
