"""
Exact symbol error rates of MRC under co-channel interference.

The SER of every supported modulation is a combination of

    W1(a, b) = E{a Q(sqrt(b g))}    and    W2(a, b) = E{a Q^2(sqrt(b g))},

each of which is a signed sum over the antenna pairs of the mixture density of g. The pair terms are
written so that no intermediate quantity overflows; cancellation between them is handled by
arithmetic.resolve_terms.
"""
import logging
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from macrodiversity_mrc.analysis import arithmetic as arith
from macrodiversity_mrc.analysis.gamma_dist import (DEGENERACY_THRESHOLD, InterfererMagnitudeProfile,
                                                    MixtureCoefficients, PairCoefficients, mixture_coefficients)
from macrodiversity_mrc.analysis.hypoexponential import (hypoexponential_q2_average, hypoexponential_q_average,
                                                         well_separated)
from macrodiversity_mrc.analysis.modulation import MAX_SYMBOL_PROFILES, Modulation, SerTerm, magnitude_profiles
from macrodiversity_mrc.analysis.powermodel import (coincident_groups, perturb_coincident_powers,
                                                    scenario_to_config, spread_desired_powers)
from macrodiversity_mrc.base.base_arithmetic import BaseArithmetic
from macrodiversity_mrc.exceptions import (AccuracyError, InternalConsistencyError, InvalidParameterError,
                                           NearSingularError, OutOfRegionError)
from macrodiversity_mrc.models.results import SerResult
from macrodiversity_mrc.models.system_config import ScenarioParams, SystemConfig

LOGGER = logging.getLogger(__name__)

PERTURB_EPSILON_REL = 1e-5
PERTURB_STABILITY_TOLERANCE = 1e-4

# |u| below which atan(sqrt(u))/sqrt(u) style ratios are evaluated by their series
SERIES_RADIUS = 1e-3
# negative results of this relative size are rounding noise
NEGATIVE_TOLERANCE = 1e-12


def _ratio_g(ar: BaseArithmetic, u: Any) -> Any:
    """
    G(u) = atanh(sqrt(u))/sqrt(u) for u > 0, atan(sqrt(-u))/sqrt(-u) for u < 0, 1 at u = 0
    """
    if abs(ar.to_float(u)) < SERIES_RADIUS:
        total = ar.number(0)
        power = ar.number(1)
        for k in range(ar.digits // 3 + 3):
            total = total + power / (2 * k + 1)
            power = power * u
        return total
    if u > 0:
        root = ar.sqrt(u)
        return ar.atanh(root) / root
    root = ar.sqrt(-u)
    return ar.atan(root) / root


def _ratio_r(ar: BaseArithmetic, t: Any) -> Any:
    """
    R(t) = atan(sqrt(2t))/sqrt(t), continued to t <= 0 by atanh
    """
    return ar.sqrt(ar.number(2)) * _ratio_g(ar, -2 * t)


def _across_zero(ar: BaseArithmetic, beta: Any, evaluate: Callable[[Any], Any]) -> Any:
    """
    Linear interpolation of evaluate across its removable singularity at beta = 0
    """
    width = ar.number(10.0 ** (-ar.digits / 3.0))
    if abs(ar.to_float(beta)) >= ar.to_float(width):
        return evaluate(beta)
    below = evaluate(-width)
    above = evaluate(width)
    return below + (beta + width) * (above - below) / (2 * width)


def _check_i1_region(alpha: float, beta: float) -> None:
    if not alpha >= 0.0 or not 1.0 + 2.0 * beta > 2.0 * alpha * alpha:
        raise OutOfRegionError('I1 needs alpha >= 0 and 1 + 2 beta > 2 alpha^2, got alpha={!r}, beta={!r}'
                               .format(alpha, beta))


def _check_i2_region(alpha: float, beta: float) -> None:
    if not alpha >= 0.0 or not 1.0 + 2.0 * alpha * alpha > 2.0 * beta:
        raise OutOfRegionError('I2 needs alpha >= 0 and 1 + 2 alpha^2 > 2 beta, got alpha={!r}, beta={!r}'
                               .format(alpha, beta))


def _integral_i1(ar: BaseArithmetic, alpha: Any, beta: Any) -> Any:
    """
    I1 / j for alpha of either sign (the integrand is odd in alpha)
    """
    if alpha < 0:
        return -_integral_i1(ar, -alpha, beta)
    _check_i1_region(ar.to_float(alpha), ar.to_float(beta))
    if alpha == 0:
        return ar.number(0)

    def evaluate(b: Any) -> Any:
        spread = ar.sqrt(2 * b + 1)
        inner = alpha * _ratio_r(ar, b - alpha * alpha) - ar.atanh(alpha * ar.sqrt(ar.number(2)) / spread) / spread
        return inner / (2 * ar.pi * b)

    return _across_zero(ar, beta, evaluate)


def _integral_i2(ar: BaseArithmetic, alpha: Any, beta: Any) -> Any:
    _check_i2_region(ar.to_float(alpha), ar.to_float(beta))

    def tail(b: Any) -> Any:
        t = 2 * b - 1
        v = ar.sqrt(ar.number(2)) * alpha
        if v == 0:
            return ar.pi / (2 * ar.sqrt(-t))
        u = t / (v * v)
        if abs(ar.to_float(u)) < SERIES_RADIUS:
            return _ratio_g(ar, u) / v
        if t < 0:
            root = ar.sqrt(-t)
            return ar.atan2(root, v) / root
        root = ar.sqrt(t)
        return ar.atanh(root / v) / root

    def evaluate(b: Any) -> Any:
        return (alpha * _ratio_r(ar, alpha * alpha - b) + tail(b)) / (2 * ar.pi * b) - 1 / (4 * b)

    return _across_zero(ar, beta, evaluate)


def integral_I1(alpha: float, beta: float, arithmetic: BaseArithmetic = arith.DOUBLE) -> float:  # noqa: N802
    """
    Real value of integral_0^inf x e^{-beta x^2} Q(x) erf(j alpha x) dx / j.

    :raises OutOfRegionError: unless alpha >= 0 and 1 + 2 beta > 2 alpha^2
    """
    _check_i1_region(alpha, beta)
    return arithmetic.to_float(_integral_i1(arithmetic, arithmetic.number(alpha), arithmetic.number(beta)))


def integral_I2(alpha: float, beta: float, arithmetic: BaseArithmetic = arith.DOUBLE) -> float:  # noqa: N802
    """
    integral_0^inf x e^{beta x^2} Q(x) erfc(alpha x) dx.

    :raises OutOfRegionError: unless alpha >= 0 and 1 + 2 alpha^2 > 2 beta
    """
    _check_i2_region(alpha, beta)
    return arithmetic.to_float(_integral_i2(arithmetic, arithmetic.number(alpha), arithmetic.number(beta)))


def _pair_terms(term: SerTerm, pair: PairCoefficients, coeffs: MixtureCoefficients) -> List[Any]:
    """
    Contribution of one antenna pair to E{a Q(sqrt(b g))} (or to E{a Q^2(sqrt(b g))}), split in two parts
    """
    ar = coeffs.arithmetic
    a = ar.number(term.a)
    b = ar.number(term.b)
    p = coeffs.p1[pair.i]
    q = coeffs.q[pair.i]
    xi, beta, omega, alpha = pair.xi, pair.beta, pair.omega, pair.alpha
    c = q / (b * p * p)
    h = c + ar.number(0.5)
    t = ar.sqrt(2 * h)
    t_minus_one = 2 * c / (t + 1)
    mass = p * xi / beta

    if not term.squared:
        first = a / 2 * mass * t_minus_one / t
        if beta > 0:
            spread = beta * alpha * alpha / b
            second = a * xi / (4 * beta * ar.sqrt(2 * b * beta) * (h + ar.sqrt(spread * h)))
        else:
            flipped = -beta
            mu = ar.number(0.5) + omega * omega / (4 * b * flipped)
            root = ar.sqrt(2 * b * flipped)
            second = a * xi / (4 * mu * flipped * root) * (alpha * ar.sqrt(flipped / (b * h)) + omega / root)
        return [first, second]

    first = a * mass * (t_minus_one / (4 * t) - ar.atan(t_minus_one / (t + 1)) / (ar.pi * t))
    try:
        if beta > 0:
            shifted = omega * omega / (4 * b * beta) - ar.number(0.5)
            second = a / ar.sqrt(ar.number(2)) * xi / (beta * ar.sqrt(b * beta)) \
                * _integral_i2(ar, alpha * ar.sqrt(beta / b), shifted)
        else:
            flipped = -beta
            mu = ar.number(0.5) + omega * omega / (4 * b * flipped)
            second = a / ar.sqrt(ar.number(2)) * xi / (flipped * ar.sqrt(b * flipped)) \
                * (_integral_i1(ar, alpha * ar.sqrt(flipped / b), mu)
                   + _integral_i1(ar, omega / (2 * ar.sqrt(b * flipped)), mu))
    except OutOfRegionError as e:
        raise InternalConsistencyError('Pair {} produced integral arguments outside their region: {}'
                                       .format(pair.label, e))
    return [first, second]


def _labelled_terms(terms: Sequence[Tuple[SerTerm, float]],
                    coeffs: MixtureCoefficients) -> List[Tuple[str, Any]]:
    labelled = []
    for term, sign in terms:
        for pair in coeffs.pairs:
            for part in _pair_terms(term, pair, coeffs):
                labelled.append((pair.label, part if sign > 0 else -part))
    return labelled


def _hypoexponential_value(terms: Sequence[Tuple[SerTerm, float]], coeffs: MixtureCoefficients) -> float:
    if coeffs.uniform_level == 0.0:
        return 0.0
    means = coeffs.hypoexponential_means()
    values = []
    for term, sign in terms:
        average = hypoexponential_q2_average if term.squared else hypoexponential_q_average
        values.append(sign * average(term.a, term.b, means))
    return math.fsum(values)


def _evaluate_profile(terms: Sequence[Tuple[SerTerm, float]], coeffs: MixtureCoefficients,
                      cancellation_digits: int) -> Tuple[float, Dict[str, float], str, int]:
    """
    Value, per-pair breakdown, evaluation method and working digits for one magnitude profile
    """
    if coeffs.is_uniform:
        value = _hypoexponential_value(terms, coeffs)
        method = 'hypoexponential' if coeffs.uniform_level == 0.0 or \
            well_separated(coeffs.hypoexponential_means()) else 'craig'
        return value, {method: value}, method, arith.DOUBLE.digits

    labels = [pair.label for _ in terms for pair in coeffs.pairs for _ in range(2)]
    resolved = arith.resolve_terms(
        lambda arithmetic: [part for _, part in _labelled_terms(terms, coeffs.in_arithmetic(arithmetic))],
        cancellation_digits, coeffs.conditioning)
    breakdown = {}  # type: Dict[str, float]
    for label, part in zip(labels, resolved.terms):
        breakdown[label] = breakdown.get(label, 0.0) + part
    return resolved.value, breakdown, 'mixture', resolved.digits


def _non_negative(value: float, scale: float) -> float:
    if value < -NEGATIVE_TOLERANCE * max(scale, 1e-300) and value < -1e-15:
        raise AccuracyError('Expectation of a nonnegative quantity evaluated to {!r}'.format(value))
    return max(0.0, value)


def _w(a: float, b: float, squared: bool, config: SystemConfig,
       profile: Optional[InterfererMagnitudeProfile], **kwargs: Any) -> float:
    if not b > 0.0:
        raise InvalidParameterError('b must be positive, got {!r}'.format(b))
    coeffs = mixture_coefficients(config, profile,
                                  degeneracy_threshold=kwargs.get('degeneracy_threshold', DEGENERACY_THRESHOLD))
    if a == 0.0:
        return 0.0
    value, _, _, _ = _evaluate_profile([(SerTerm(a, b, squared), 1.0)], coeffs,
                                       kwargs.get('cancellation_digits', arith.CANCELLATION_DIGITS))
    return _non_negative(value, abs(a))


def w1(a: float, b: float, config: SystemConfig, profile: Optional[InterfererMagnitudeProfile] = None,
       **kwargs: Any) -> float:
    """
    E{a Q(sqrt(b g))} for one interferer magnitude profile
    """
    return _w(a, b, False, config, profile, **kwargs)


def w2(a: float, b: float, config: SystemConfig, profile: Optional[InterfererMagnitudeProfile] = None,
       **kwargs: Any) -> float:
    """
    E{a Q^2(sqrt(b g))} for one interferer magnitude profile
    """
    return _w(a, b, True, config, profile, **kwargs)


def average_over_symbols(term_evaluator: Callable[[InterfererMagnitudeProfile], float],
                         modulation: Modulation,
                         config: SystemConfig,
                         max_profiles: int = MAX_SYMBOL_PROFILES) -> float:
    """
    Probability-weighted average of term_evaluator over the interferer magnitude profiles of modulation
    """
    profiles = magnitude_profiles(modulation, config, max_profiles)
    return math.fsum(profile.probability * term_evaluator(profile) for profile in profiles)


def _signed_terms(modulation: Modulation) -> List[Tuple[SerTerm, float]]:
    return [(term, -1.0 if term.squared else 1.0) for term in modulation.ser_terms]


def ser(modulation: Modulation, config: SystemConfig,
        max_profiles: int = MAX_SYMBOL_PROFILES,
        degeneracy_threshold: float = DEGENERACY_THRESHOLD,
        cancellation_digits: int = arith.CANCELLATION_DIGITS) -> SerResult:
    """
    Exact SER of modulation for the configuration, averaged over the interferer symbol magnitudes.

    :param modulation: Modulation
    :param config: configuration with distinct desired powers (see perturb_coincident_powers)
    :param max_profiles: cap on the number of magnitude profiles
    :param degeneracy_threshold: near-singularity threshold of the mixture coefficients
    :param cancellation_digits: digits of cancellation tolerated in double precision
    :return: SerResult
    """
    terms = _signed_terms(modulation)
    profiles = magnitude_profiles(modulation, config, max_profiles)
    weighted = []
    breakdown = {}  # type: Dict[str, float]
    methods = set()
    digits = arith.DOUBLE.digits
    for profile in profiles:
        coeffs = mixture_coefficients(config, profile, degeneracy_threshold=degeneracy_threshold)
        value, parts, method, used = _evaluate_profile(terms, coeffs, cancellation_digits)
        weighted.append(profile.probability * value)
        for label, part in parts.items():
            breakdown[label] = breakdown.get(label, 0.0) + profile.probability * part
        methods.add(method)
        digits = max(digits, used)

    value = math.fsum(weighted)
    value = min(1.0, _non_negative(value, 1.0))
    LOGGER.debug('SER {} = {!r} over {} profiles ({})'.format(modulation.name, value, len(profiles),
                                                              ', '.join(sorted(methods))))
    return SerResult(value=value,
                     breakdown=breakdown,
                     profile_weights=[(list(profile.magnitudes), profile.probability) for profile in profiles],
                     method='+'.join(sorted(methods)),
                     digits=digits)


def first_order(modulation: Modulation) -> Modulation:
    """
    The modulation with only the Q terms of its SER decomposition
    """
    return Modulation(modulation.name, modulation.points, [term for term in modulation.ser_terms if not term.squared])


def approximate_ser(modulation: Modulation, config: SystemConfig, **kwargs: Any) -> float:
    """
    First-order SER, an upper bound that is tight at low SER
    """
    return ser(first_order(modulation), config, **kwargs).value


def has_interference(config: SystemConfig) -> bool:
    return any(interferer.trace > 0.0 for interferer in config.interferers)


def error_floor(modulation: Modulation, config: SystemConfig, **kwargs: Any) -> float:
    """
    SER in the limit of vanishing noise; zero without interference
    """
    if not has_interference(config):
        return 0.0
    return ser(modulation, config.with_noise(0.0), **kwargs).value


def _spread_coincident_powers(config: SystemConfig, epsilon_rel: float) -> SystemConfig:
    return spread_desired_powers(perturb_coincident_powers(config, epsilon_rel), epsilon_rel)


def _checked_ser(modulation: Modulation, config: SystemConfig, perturb: Callable[[SystemConfig, float], SystemConfig],
                 epsilon_rel: float, tolerance: float, degeneracy_threshold: float, **kwargs: Any) -> SerResult:
    def evaluate(epsilon: float) -> SerResult:
        # factors separated by the perturbation scale with its square
        return ser(modulation, perturb(config, epsilon), degeneracy_threshold=degeneracy_threshold * epsilon ** 2,
                   **kwargs)

    result = evaluate(epsilon_rel)
    check = evaluate(epsilon_rel / 2.0)
    change = abs(result.value - check.value) / result.value if result.value > 0.0 else abs(check.value)
    if change >= tolerance:
        raise AccuracyError('SER changed by {:.3e} (relative) between epsilon {} and {}'
                            .format(change, epsilon_rel, epsilon_rel / 2.0))
    result.perturbation = {'epsilon_rel': epsilon_rel, 'relative_change': change}
    return result


def stable_ser(modulation: Modulation, config: SystemConfig,
               epsilon_rel: float = PERTURB_EPSILON_REL,
               tolerance: float = PERTURB_STABILITY_TOLERANCE,
               degeneracy_threshold: float = DEGENERACY_THRESHOLD,
               **kwargs: Any) -> SerResult:
    """
    SER of a configuration whose closed form may be degenerate. Coincident desired powers are perturbed by
    epsilon_rel; when partial-fraction factors still vanish (desired and interference powers varying inversely
    across the antennas) every desired power is spread by up to epsilon_rel as well. A perturbed result is
    accepted only if perturbing by epsilon_rel/2 changes it by less than tolerance (relative). Configurations
    that need neither are evaluated directly.

    :raises AccuracyError: when the result is not stable under the perturbation
    """
    if coincident_groups(config.desired_powers):
        try:
            return _checked_ser(modulation, config, perturb_coincident_powers, epsilon_rel, tolerance,
                                degeneracy_threshold, **kwargs)
        except NearSingularError as e:
            LOGGER.info('{}; spreading the desired powers'.format(e))
    else:
        try:
            return ser(modulation, config, degeneracy_threshold=degeneracy_threshold, **kwargs)
        except NearSingularError as e:
            LOGGER.info('{}; spreading the desired powers'.format(e))
    return _checked_ser(modulation, config, _spread_coincident_powers, epsilon_rel, tolerance, degeneracy_threshold,
                        **kwargs)


def stable_error_floor(modulation: Modulation, config: SystemConfig, **kwargs: Any) -> float:
    if not has_interference(config):
        return 0.0
    return stable_ser(modulation, config.with_noise(0.0), **kwargs).value


def ser_curve(modulation: Modulation, scenario: ScenarioParams, rho_grid_db: Sequence[float],
              epsilon_rel: Optional[float] = None, **kwargs: Any) -> List[Tuple[float, float]]:
    """
    SER at each average SNR of the grid, in grid order

    :param epsilon_rel: relative perturbation for degenerate configurations (see stable_ser); without it the
        configurations are evaluated as given
    """
    curve = []
    for rho_db in rho_grid_db:
        config = scenario_to_config(scenario.with_rho(rho_db))
        if epsilon_rel is None:
            result = ser(modulation, config, **kwargs)
        else:
            result = stable_ser(modulation, config, epsilon_rel=epsilon_rel, **kwargs)
        curve.append((float(rho_db), result.value))
    return curve

