import logging
import math
from typing import Dict, List, Sequence, Tuple

from macrodiversity_mrc.exceptions import InvalidParameterError
from macrodiversity_mrc.models.system_config import (Normalization, PowerMatrix, ScenarioParams, SystemConfig,
                                                     TRACE_CONVENTION_N_R)

LOGGER = logging.getLogger(__name__)

# entries closer than this (relative) are treated as the same power
COINCIDENCE_TOLERANCE = 1e-12


def exponential_profile(trace: float, alpha: float, n_r: int, source_id: str = '') -> PowerMatrix:
    """
    Exponential power profile P_i = K alpha^(i-1) with K chosen so that the entries sum to trace.

    :param trace: total power over all antennas
    :param alpha: ratio between the powers at consecutive antennas
    :param n_r: number of antennas
    :param source_id: label of the returned matrix
    :return: PowerMatrix
    """
    if not trace > 0.0 or not alpha > 0.0 or n_r < 1:
        raise InvalidParameterError('Exponential profile needs positive trace, alpha and antenna count, got '
                                    '({!r}, {!r}, {!r})'.format(trace, alpha, n_r))
    weights = [alpha ** i for i in range(n_r)]
    scale = trace / math.fsum(weights)
    return PowerMatrix([scale * weight for weight in weights], source_id)


def located_profile(trace: float, alpha: float, n_r: int, antennas_per_location: int = 1,
                    source_id: str = '') -> PowerMatrix:
    """
    Exponential profile over locations, every antenna at a location receiving the same power
    """
    if antennas_per_location < 1 or n_r % antennas_per_location:
        raise InvalidParameterError('{} antennas cannot be split into locations of {}'
                                    .format(n_r, antennas_per_location))
    per_location = exponential_profile(trace, alpha, n_r // antennas_per_location)
    entries = [power / antennas_per_location
               for power in per_location.entries
               for _ in range(antennas_per_location)]
    return PowerMatrix(entries, source_id)


def noise_power_for_rho(desired: PowerMatrix, rho_db: float) -> float:
    """
    Noise power giving the average received SNR rho = Tr(P_1) / (n_R sigma^2)
    """
    if math.isinf(rho_db) and rho_db > 0:
        return 0.0
    return desired.trace / (desired.n_r * 10.0 ** (rho_db / 10.0))


def scenario_to_config(params: ScenarioParams) -> SystemConfig:
    """
    Builds the single-interferer configuration for (rho, varsigma, alpha_desired, alpha_interferer).
    A rho of +inf gives the noiseless configuration used for error floors.
    """
    desired = located_profile(params.trace_norm, params.alpha_desired, params.n_r,
                              params.antennas_per_location, source_id='desired')
    interferer = located_profile(params.trace_norm / params.varsigma, params.alpha_interferer, params.n_r,
                                 params.antennas_per_location, source_id='interferer')
    normalization = Normalization(trace_convention=TRACE_CONVENTION_N_R,
                                  rho_db=params.rho_db,
                                  varsigma=params.varsigma)
    return SystemConfig(desired, [interferer], noise_power_for_rho(desired, params.rho_db), normalization)


def recover_rho_varsigma(config: SystemConfig) -> Tuple[float, float]:
    """
    Average SNR (dB) and total signal-to-interference ratio implied by a configuration
    """
    interference = math.fsum(interferer.trace for interferer in config.interferers)
    rho_db = math.inf if config.noise_power == 0.0 else \
        10.0 * math.log10(config.desired.trace / (config.n_r * config.noise_power))
    varsigma = math.inf if interference == 0.0 else config.desired.trace / interference
    return rho_db, varsigma


def aggregate_interferers(interferers: Sequence[PowerMatrix], magnitudes: Sequence[float],
                          n_r: int = 0) -> PowerMatrix:
    """
    Entrywise sum_k P_k |s_k|^2, the single interferer equivalent to a set of interferers

    :param interferers: interferer power matrices
    :param magnitudes: squared symbol magnitude of every interferer
    :param n_r: antenna count of the zero matrix returned for an empty list
    """
    if len(interferers) != len(magnitudes):
        raise InvalidParameterError('Got {} interferers but {} magnitudes'.format(len(interferers), len(magnitudes)))
    if not interferers:
        return PowerMatrix([0.0] * max(n_r, 1), 'aggregate')
    antennas = {interferer.n_r for interferer in interferers}
    if len(antennas) != 1:
        raise InvalidParameterError('Interferers have differing antenna counts {}'.format(sorted(antennas)))
    entries = [math.fsum(interferer.entries[i] * magnitude for interferer, magnitude in zip(interferers, magnitudes))
               for i in range(interferers[0].n_r)]
    return PowerMatrix(entries, 'aggregate')


def interference_levels(config: SystemConfig, magnitudes: Sequence[float]) -> List[float]:
    """
    Diagonal of D = sum_k P_k |s_k|^2 + sigma^2 I for one interferer magnitude profile
    """
    aggregate = aggregate_interferers(config.interferers, magnitudes, config.n_r)
    return [level + config.noise_power for level in aggregate.entries]


def coincident_groups(powers: Sequence[float], tolerance: float = COINCIDENCE_TOLERANCE) -> List[List[int]]:
    """
    Groups of antenna indices whose powers coincide within a relative tolerance, in index order
    """
    groups = []  # type: List[List[int]]
    assigned = {}  # type: Dict[int, int]
    for i, power in enumerate(powers):
        if i in assigned:
            continue
        group = [i]
        for k in range(i + 1, len(powers)):
            if k not in assigned and abs(powers[k] - power) <= tolerance * max(abs(power), abs(powers[k])):
                group.append(k)
                assigned[k] = i
        if len(group) > 1:
            groups.append(group)
    return groups


def perturb_coincident_powers(config: SystemConfig, epsilon_rel: float) -> SystemConfig:
    """
    Replaces every group of m equal desired powers p by p, p(1+eps), ..., p(1+(m-1)eps) so that the
    distinct-power closed forms apply to co-located antennas.

    :param config: configuration, returned unchanged when its desired powers are already distinct
    :param epsilon_rel: relative offset between consecutive members of a group
    :return: SystemConfig
    """
    if not epsilon_rel > 0.0:
        raise InvalidParameterError('epsilon_rel must be positive, got {!r}'.format(epsilon_rel))
    groups = coincident_groups(config.desired_powers)
    if not groups:
        return config

    entries = list(config.desired_powers)
    for group in groups:
        base = entries[group[0]]
        for offset, index in enumerate(group):
            entries[index] = base * (1.0 + offset * epsilon_rel)
    LOGGER.debug('Perturbed coincident desired powers {} with epsilon {}'.format(groups, epsilon_rel))

    normalization = Normalization(trace_convention=config.normalization.trace_convention,
                                  rho_db=config.normalization.rho_db,
                                  varsigma=config.normalization.varsigma,
                                  epsilon_rel=epsilon_rel)
    return config.with_desired(PowerMatrix(entries, config.desired.source_id), normalization)


def spread_desired_powers(config: SystemConfig, epsilon_rel: float) -> SystemConfig:
    """
    Scales desired power i by 1 + eps (i / n_R)^2, counting antennas from one. Besides separating coincident
    powers this breaks confluent configurations, where p_i times the interference power is the same on every
    antenna and every partial-fraction factor of the closed forms vanishes.

    :param config: configuration
    :param epsilon_rel: largest relative change of a desired power
    :return: SystemConfig
    """
    if not epsilon_rel > 0.0:
        raise InvalidParameterError('epsilon_rel must be positive, got {!r}'.format(epsilon_rel))
    n_r = config.n_r
    entries = [power * (1.0 + epsilon_rel * ((i + 1) / n_r) ** 2) for i, power in enumerate(config.desired_powers)]
    LOGGER.debug('Spread desired powers with epsilon {}'.format(epsilon_rel))

    normalization = Normalization(trace_convention=config.normalization.trace_convention,
                                  rho_db=config.normalization.rho_db,
                                  varsigma=config.normalization.varsigma,
                                  epsilon_rel=epsilon_rel)
    return config.with_desired(PowerMatrix(entries, config.desired.source_id), normalization)
