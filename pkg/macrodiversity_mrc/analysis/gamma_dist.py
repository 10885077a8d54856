"""
Distribution of g = X^2 / Y with X = h^H h and Y = h^H D h for a desired channel h with independent
Rayleigh entries of powers p_i and a diagonal interference-plus-noise matrix D.

The joint density of (X, Y) is a signed sum over ordered antenna pairs (i, k),

    f(x, y) = sum_{beta_ik > 0} xi_ik e^{-x/p_i} e^{-beta_ik (y - c_i x)} u(y - c_i x)
            - sum_{beta_ik < 0} xi_ik e^{-x/p_i} e^{-beta_ik (y - c_i x)} u(c_i x - y),     c_i = Q_i / p_i,

and the CDF of g follows term by term. Pairs seeing the same interference level carry no mass and are
dropped; when every antenna sees the same level the ratio is hypoexponential and handled by that module.
"""
import logging
import math
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from macrodiversity_mrc.analysis import arithmetic as arith
from macrodiversity_mrc.analysis.hypoexponential import hypoexponential_cdf
from macrodiversity_mrc.analysis.powermodel import coincident_groups, COINCIDENCE_TOLERANCE
from macrodiversity_mrc.base.base_arithmetic import BaseArithmetic
from macrodiversity_mrc.exceptions import (AccuracyError, CoincidentPowerError, InvalidParameterError,
                                           NearSingularError)
from macrodiversity_mrc.models.system_config import SystemConfig

LOGGER = logging.getLogger(__name__)

DEGENERACY_THRESHOLD = 1e-9
CDF_CLAMP_TOLERANCE = 1e-9


class InterfererMagnitudeProfile:
    """
    Squared symbol magnitudes of the interferers and the probability of that combination
    """
    def __init__(self, magnitudes: Sequence[float], probability: float = 1.0) -> None:
        self.magnitudes = tuple(float(magnitude) for magnitude in magnitudes)
        if any(magnitude < 0.0 for magnitude in self.magnitudes):
            raise InvalidParameterError('Symbol magnitudes must be nonnegative, got {!r}'.format(self.magnitudes))
        self.probability = float(probability)

    def __repr__(self) -> str:
        return 'InterfererMagnitudeProfile(magnitudes={!r}, probability={!r})'.format(self.magnitudes,
                                                                                      self.probability)


def unit_profile(config: SystemConfig) -> InterfererMagnitudeProfile:
    return InterfererMagnitudeProfile([1.0] * len(config.interferers), 1.0)


class PairCoefficients:
    def __init__(self, i: int, k: int, xi: Any, beta: Any, omega: Any, alpha: Any) -> None:
        self.i = i
        self.k = k
        self.xi = xi
        self.beta = beta
        self.omega = omega
        self.alpha = alpha

    @property
    def label(self) -> str:
        return '{},{}'.format(self.i + 1, self.k + 1)

    def __repr__(self) -> str:
        return 'PairCoefficients(i={}, k={}, xi={!r}, beta={!r}, omega={!r}, alpha={!r})'.format(
            self.i, self.k, self.xi, self.beta, self.omega, self.alpha)


class MixtureCoefficients:
    """
    Per-pair coefficients of the joint density for one configuration and magnitude profile, with numbers
    produced by `arithmetic`. `uniform_level` is set instead of pairs when every antenna sees the same level.
    `conditioning` counts the decimal digits lost to the smallest partial-fraction factor.
    """
    def __init__(self, *,
                 p1: Sequence[Any],
                 q: Sequence[Any],
                 pairs: Sequence[PairCoefficients],
                 dropped: Sequence[Tuple[int, int]],
                 arithmetic: BaseArithmetic,
                 config: SystemConfig,
                 profile: InterfererMagnitudeProfile,
                 degeneracy_threshold: float,
                 uniform_level: Optional[float] = None,
                 conditioning: float = 0.0) -> None:
        self.p1 = tuple(p1)
        self.q = tuple(q)
        self.pairs = tuple(pairs)
        self.dropped = tuple(dropped)
        self.arithmetic = arithmetic
        self.config = config
        self.profile = profile
        self.degeneracy_threshold = degeneracy_threshold
        self.uniform_level = uniform_level
        self.conditioning = conditioning
        self._variants = {arithmetic.digits: self}  # type: Dict[int, MixtureCoefficients]

    @property
    def n_r(self) -> int:
        return len(self.p1)

    @property
    def is_uniform(self) -> bool:
        return self.uniform_level is not None

    def hypoexponential_means(self) -> List[float]:
        """
        Branch means of g = X / D when the level D is common to all antennas
        """
        if self.uniform_level is None:
            raise InvalidParameterError('Interference levels differ between antennas')
        return [float(p) / self.uniform_level for p in self.p1]

    def pair(self, i: int, k: int) -> PairCoefficients:
        for pair in self.pairs:
            if pair.i == i and pair.k == k:
                return pair
        raise KeyError((i, k))

    def in_arithmetic(self, arithmetic: BaseArithmetic) -> 'MixtureCoefficients':
        """
        The same coefficients recomputed from the configuration with another arithmetic
        """
        if arithmetic.digits not in self._variants:
            self._variants[arithmetic.digits] = mixture_coefficients(self.config, self.profile,
                                                                     arithmetic=arithmetic,
                                                                     degeneracy_threshold=self.degeneracy_threshold)
        return self._variants[arithmetic.digits]


def _levels(config: SystemConfig, profile: InterfererMagnitudeProfile, arithmetic: BaseArithmetic) -> List[Any]:
    noise = arithmetic.number(config.noise_power)
    levels = []
    for i in range(config.n_r):
        contributions = [arithmetic.number(interferer.entries[i]) * arithmetic.number(magnitude)
                         for interferer, magnitude in zip(config.interferers, profile.magnitudes)]
        levels.append(arithmetic.fsum(contributions + [noise]))
    return levels


def _same_level(d_i: float, d_k: float) -> bool:
    return abs(d_i - d_k) <= COINCIDENCE_TOLERANCE * max(abs(d_i), abs(d_k))


def _pair_denominator(ar: BaseArithmetic, p: List[Any], upsilon: Callable[[int, int], Any], pair: Tuple[int, int],
                      degeneracy_threshold: float) -> Tuple[Any, float]:
    """
    prod_{m != i, k} (upsilon_ik (p_i - p_m) - nu_ik upsilon_im), with the smallest relative size of a factor

    :raises NearSingularError: when a factor is zero or small against the size of its two parts
    """
    i, k = pair
    upsilon_ik = upsilon(i, k)
    nu_ik = p[i] - p[k]
    denominator = ar.number(1)
    smallest = 1.0
    for m in range(len(p)):
        if m == i or m == k:
            continue
        left = upsilon_ik * (p[i] - p[m])
        right = nu_ik * upsilon(i, m)
        factor = left - right
        scale = abs(ar.to_float(left)) + abs(ar.to_float(right))
        ratio = abs(ar.to_float(factor)) / scale
        if ratio == 0.0 or ratio < degeneracy_threshold:
            raise NearSingularError((i, k, m), ratio)
        smallest = min(smallest, ratio)
        denominator = denominator * factor
    return denominator, smallest


def mixture_coefficients(config: SystemConfig,
                         profile: Optional[InterfererMagnitudeProfile] = None,
                         arithmetic: BaseArithmetic = arith.DOUBLE,
                         degeneracy_threshold: float = DEGENERACY_THRESHOLD) -> MixtureCoefficients:
    """
    Computes xi_ik, beta_ik, omega_ik and alpha_ik for every ordered antenna pair.

    :param config: configuration with pairwise distinct desired powers
    :param profile: interferer magnitudes, unit magnitudes by default
    :param arithmetic: number backend for the coefficients
    :param degeneracy_threshold: relative size below which a partial-fraction factor is near-singular
    :return: MixtureCoefficients
    """
    profile = profile or unit_profile(config)
    if len(profile.magnitudes) != len(config.interferers):
        raise InvalidParameterError('Profile has {} magnitudes for {} interferers'
                                    .format(len(profile.magnitudes), len(config.interferers)))

    groups = coincident_groups(config.desired_powers)
    if groups:
        raise CoincidentPowerError(groups)

    ar = arithmetic
    n_r = config.n_r
    p = [ar.number(power) for power in config.desired_powers]
    d = _levels(config, profile, ar)
    d_float = [ar.to_float(level) for level in d]
    q = [p_i * d_i for p_i, d_i in zip(p, d)]

    common = dict(p1=p, q=q, arithmetic=ar, config=config, profile=profile,
                  degeneracy_threshold=degeneracy_threshold)
    if all(_same_level(d_float[0], level) for level in d_float):
        LOGGER.debug('Uniform interference level {!r}, using the hypoexponential form'.format(d_float[0]))
        return MixtureCoefficients(pairs=[], dropped=[], uniform_level=d_float[0], **common)
    if any(level <= 0.0 for level in d_float):
        raise InvalidParameterError('Antennas without interference or noise alongside interfered antennas: {!r}'
                                    .format(d_float))

    def upsilon(i: int, k: int) -> Any:
        if _same_level(d_float[i], d_float[k]):
            return ar.number(0)
        return p[i] * p[k] * (d[k] - d[i])

    pairs = []
    dropped = []
    smallest = 1.0
    for i in range(n_r):
        for k in range(n_r):
            if i == k:
                continue
            if _same_level(d_float[i], d_float[k]):
                dropped.append((i, k))
                continue
            upsilon_ik = upsilon(i, k)
            nu_ik = p[i] - p[k]
            beta = nu_ik / upsilon_ik

            denominator, ratio = _pair_denominator(ar, p, upsilon, (i, k), degeneracy_threshold)
            smallest = min(smallest, ratio)
            xi = p[i] ** (n_r - 2) * upsilon_ik ** (n_r - 3) / denominator
            omega = (1 - beta * q[i]) / p[i]
            alpha = q[i] / (2 * p[i]) + 1 / (2 * beta * p[i])
            pairs.append(PairCoefficients(i, k, xi, beta, omega, alpha))

    if dropped:
        LOGGER.debug('Dropped pairs with equal interference levels: {}'.format(dropped))
    return MixtureCoefficients(pairs=pairs, dropped=dropped, conditioning=-math.log10(smallest), **common)


def joint_pdf(x: float, y: float, coeffs: MixtureCoefficients) -> float:
    """
    Joint density of X = h^H h and Y = h^H D h
    """
    if coeffs.is_uniform:
        raise InvalidParameterError('The joint density is singular when Y = D X')
    if x < 0.0 or y < 0.0:
        return 0.0
    ar = coeffs.arithmetic
    terms = []
    for pair in coeffs.pairs:
        p_i = ar.to_float(coeffs.p1[pair.i])
        slope = ar.to_float(coeffs.q[pair.i]) / p_i
        beta = ar.to_float(pair.beta)
        offset = y - slope * x
        if beta > 0.0 and offset > 0.0:
            terms.append(ar.to_float(pair.xi) * math.exp(-x / p_i - beta * offset))
        elif beta < 0.0 and offset < 0.0:
            terms.append(-ar.to_float(pair.xi) * math.exp(-x / p_i - beta * offset))
    return math.fsum(terms)


def _cdf_terms(r: float, coeffs: MixtureCoefficients) -> List[Any]:
    ar = coeffs.arithmetic
    r_ = ar.number(r)
    pi = ar.pi
    terms = []
    for pair in coeffs.pairs:
        p = coeffs.p1[pair.i]
        q = coeffs.q[pair.i]
        xi, beta, omega, alpha = pair.xi, pair.beta, pair.omega, pair.alpha
        exponent = -r_ * q / (p * p)
        terms.append(-(p * xi / beta) * ar.expm1(exponent))
        if beta > 0:
            # e^{r omega^2/(4 beta)} erfc(sqrt(r beta) alpha) folded into e^{-rQ/p^2} erfcx(.)
            terms.append(xi / (2 * beta) * ar.sqrt(pi * r_ / beta)
                         * ar.exp_erfcx(exponent, ar.sqrt(r_ * beta) * alpha))
        else:
            flipped = -beta
            terms.append(-(xi / beta) * ar.sqrt(r_ / flipped)
                         * (ar.exp_dawson(exponent, ar.sqrt(r_ * flipped) * alpha)
                            + ar.dawson(ar.sqrt(r_ / flipped) * omega / 2)))
    return terms


def clamp_probability(value: float, tolerance: float = CDF_CLAMP_TOLERANCE) -> float:
    if value < -tolerance or value > 1.0 + tolerance:
        raise AccuracyError('Probability {!r} lies outside [0, 1] by more than {}'.format(value, tolerance))
    return min(1.0, max(0.0, value))


def gamma_cdf(r: float, coeffs: MixtureCoefficients,
              clamp_tolerance: float = CDF_CLAMP_TOLERANCE,
              cancellation_digits: int = arith.CANCELLATION_DIGITS) -> float:
    """
    P(g < r)

    :param r: nonnegative threshold on the linear scale
    :param coeffs: coefficients from mixture_coefficients
    :param clamp_tolerance: largest excursion outside [0, 1] clamped without error
    :param cancellation_digits: digits of cancellation tolerated before extended precision is used
    :return: probability
    """
    if r < 0.0 or math.isnan(r):
        raise InvalidParameterError('CDF threshold must be nonnegative, got {!r}'.format(r))
    if r == 0.0:
        return 0.0
    if math.isinf(r):
        return 1.0
    if coeffs.is_uniform:
        if coeffs.uniform_level == 0.0:
            return 0.0
        return hypoexponential_cdf(r, coeffs.hypoexponential_means())

    resolved = arith.resolve_terms(lambda arithmetic: _cdf_terms(r, coeffs.in_arithmetic(arithmetic)),
                                   cancellation_digits, coeffs.conditioning)
    return clamp_probability(resolved.value, clamp_tolerance)


def outage_probability(config: SystemConfig,
                       profile: Optional[InterfererMagnitudeProfile],
                       threshold: float,
                       threshold_in_db: bool = False,
                       **kwargs: Any) -> float:
    """
    P(g < threshold) for one magnitude profile, the threshold given linearly or in dB
    """
    linear = 10.0 ** (threshold / 10.0) if threshold_in_db else threshold
    if linear <= 0.0:
        return 0.0
    if math.isinf(linear):
        return 1.0
    degeneracy_threshold = kwargs.pop('degeneracy_threshold', DEGENERACY_THRESHOLD)
    coeffs = mixture_coefficients(config, profile, degeneracy_threshold=degeneracy_threshold)
    return gamma_cdf(linear, coeffs, **kwargs)
