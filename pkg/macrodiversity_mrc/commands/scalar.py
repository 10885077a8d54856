import logging
import math
from typing import Optional

import click
from flask import current_app as app
from flask.cli import with_appcontext

from macrodiversity_mrc.analysis.gamma_dist import outage_probability
from macrodiversity_mrc.analysis.metrics import mean_sinr_metric
from macrodiversity_mrc.analysis.modulation import Modulation, magnitude_profiles
from macrodiversity_mrc.analysis.powermodel import (coincident_groups, perturb_coincident_powers,
                                                    spread_desired_powers)
from macrodiversity_mrc.analysis.ser_analytic import first_order, has_interference
from macrodiversity_mrc.commands.ser import (analytic_ser, config_argument, epsilon_option, modulation_option,
                                             perturb_option)
from macrodiversity_mrc.commands.utils.config_utils import read_scenario_file, resolve_epsilon, resolve_modulation
from macrodiversity_mrc.commands.utils.error_utils import handle_errors
from macrodiversity_mrc.commands.utils.output_utils import echo_values
from macrodiversity_mrc.exceptions import NearSingularError
from macrodiversity_mrc.log.run_log import run_logging
from macrodiversity_mrc.models.system_config import SystemConfig

LOGGER = logging.getLogger(__name__)


def _db(value: float) -> float:
    return 10.0 * math.log10(value) if value > 0.0 else -math.inf


@click.command('floor')
@config_argument
@modulation_option
@perturb_option
@epsilon_option
@with_appcontext
@run_logging
@handle_errors
def floor_command(config_path: str, modulation: Optional[str], perturb: Optional[bool],
                  epsilon: Optional[float]) -> None:
    """Error floor: the SER without noise, with its first-order approximation."""
    scenario_file = read_scenario_file(config_path)
    constellation = resolve_modulation(modulation, scenario_file)
    epsilon_rel = resolve_epsilon(perturb, epsilon, scenario_file)
    config = scenario_file.system_config().with_noise(0.0)
    floor, approx = 0.0, 0.0
    if has_interference(config):
        floor = analytic_ser(constellation, config, epsilon_rel)
        approx = analytic_ser(first_order(constellation), config, epsilon_rel)
    echo_values({'floor': floor, 'floor_db': _db(floor), 'floor_approx': approx})


@click.command('metric')
@config_argument
@with_appcontext
@run_logging
@handle_errors
def metric_command(config_path: str) -> None:
    """Mean-SINR power metric m_p at the configured noise level."""
    report = mean_sinr_metric(read_scenario_file(config_path).system_config())
    echo_values({'m_p': report.m_p_linear, 'm_p_db': report.m_p_db})


def _average_outage(config: SystemConfig, constellation: Modulation, threshold_db: float,
                    epsilon_rel: Optional[float] = None) -> float:
    degeneracy_threshold = app.config['DEGENERACY_THRESHOLD']
    if epsilon_rel is not None:
        degeneracy_threshold *= epsilon_rel ** 2
    profiles = magnitude_profiles(constellation, config, app.config['MAX_SYMBOL_PROFILES'])
    probability = math.fsum(
        profile.probability * outage_probability(config, profile, threshold_db, threshold_in_db=True,
                                                 degeneracy_threshold=degeneracy_threshold,
                                                 clamp_tolerance=app.config['CDF_CLAMP_TOLERANCE'],
                                                 cancellation_digits=app.config['CANCELLATION_DIGITS'])
        for profile in profiles)
    return min(1.0, probability)


@click.command('outage')
@config_argument
@click.option('--threshold-db', type=float, required=True, help='SINR threshold in dB, -inf allowed')
@modulation_option
@perturb_option
@epsilon_option
@with_appcontext
@run_logging
@handle_errors
def outage_command(config_path: str, threshold_db: float, modulation: Optional[str], perturb: Optional[bool],
                   epsilon: Optional[float]) -> None:
    """Probability that the combiner SINR falls below the threshold, averaged over interferer symbols."""
    scenario_file = read_scenario_file(config_path)
    constellation = resolve_modulation(modulation, scenario_file)
    epsilon_rel = resolve_epsilon(perturb, epsilon, scenario_file)
    config = scenario_file.system_config()
    perturbed = None  # type: Optional[float]
    if epsilon_rel is not None and coincident_groups(config.desired_powers):
        config, perturbed = perturb_coincident_powers(config, epsilon_rel), epsilon_rel

    probability = 0.0
    if threshold_db > -math.inf:
        try:
            probability = _average_outage(config, constellation, threshold_db, perturbed)
        except NearSingularError as e:
            if epsilon_rel is None:
                raise
            LOGGER.info('{}; spreading the desired powers'.format(e))
            probability = _average_outage(spread_desired_powers(config, epsilon_rel), constellation, threshold_db,
                                          epsilon_rel)
    echo_values({'outage': probability, 'threshold_db': threshold_db})
