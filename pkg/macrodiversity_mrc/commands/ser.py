import logging
import math
from typing import List, Optional, Tuple

import click
from flask import current_app as app
from flask.cli import with_appcontext

from macrodiversity_mrc.analysis.mcsim import simulate_ser
from macrodiversity_mrc.analysis.modulation import Modulation
from macrodiversity_mrc.analysis.ser_analytic import ser, stable_ser
from macrodiversity_mrc.commands.utils.config_utils import (parse_rho_grid, read_scenario_file, resolve_epsilon,
                                                            resolve_modulation)
from macrodiversity_mrc.commands.utils.error_utils import EXIT_VALIDATION_FAILED, exit_with_error, handle_errors
from macrodiversity_mrc.commands.utils.output_utils import write_csv, write_manifest
from macrodiversity_mrc.log.run_log import run_logging
from macrodiversity_mrc.models.system_config import SystemConfig

LOGGER = logging.getLogger(__name__)

SER_HEADER = ['rho_db', 'ser_analytic']
VALIDATE_HEADER = ['rho_db', 'ser_analytic', 'ser_mc', 'mc_stderr', 'z_score']

config_argument = click.argument('config_path', type=click.Path(dir_okay=False))
modulation_option = click.option('--modulation', default=None, help='bpsk, qpsk, 16qam, 64qam or 256qam; '
                                                                     'defaults to the config file, then bpsk')
grid_option = click.option('--rho-grid', default='0:5:40', show_default=True,
                           help='Average SNR grid in dB: start:step:stop or a comma separated list')
out_option = click.option('--out', required=True, type=click.Path(dir_okay=False), help='CSV file to write')
perturb_option = click.option('--perturb/--no-perturb', default=None,
                              help='Perturb coincident desired powers (default: when the config file sets '
                                   'perturb_epsilon_rel)')
epsilon_option = click.option('--epsilon', type=float, default=None, help='Relative perturbation')


def analytic_ser(modulation: Modulation, config: SystemConfig, epsilon_rel: Optional[float]) -> float:
    """
    Exact SER with the configured numerical settings, perturbing coincident or confluent powers when epsilon_rel is set
    """
    options = dict(max_profiles=app.config['MAX_SYMBOL_PROFILES'],
                   degeneracy_threshold=app.config['DEGENERACY_THRESHOLD'],
                   cancellation_digits=app.config['CANCELLATION_DIGITS'])
    if epsilon_rel is None:
        return ser(modulation, config, **options).value
    return stable_ser(modulation, config, epsilon_rel=epsilon_rel,
                      tolerance=app.config['PERTURB_STABILITY_TOLERANCE'], **options).value


def z_score(analytic: float, estimate: float, n_symbols: int) -> float:
    """
    Standardized difference, using the binomial spread implied by the analytic value
    """
    spread = math.sqrt(analytic * (1.0 - analytic) / n_symbols)
    if spread == 0.0:
        return 0.0 if analytic == estimate else math.copysign(math.inf, estimate - analytic)
    return (estimate - analytic) / spread


@click.command('ser')
@config_argument
@modulation_option
@grid_option
@out_option
@perturb_option
@epsilon_option
@with_appcontext
@run_logging
@handle_errors
def ser_command(config_path: str, modulation: Optional[str], rho_grid: str, out: str, perturb: Optional[bool],
                epsilon: Optional[float]) -> None:
    """Analytic SER over an average SNR grid."""
    scenario_file = read_scenario_file(config_path)
    constellation = resolve_modulation(modulation, scenario_file)
    epsilon_rel = resolve_epsilon(perturb, epsilon, scenario_file)
    grid = parse_rho_grid(rho_grid)
    LOGGER.info('Computing {} SER at {} points'.format(constellation.name, len(grid)))

    configs = [scenario_file.system_config(rho_db) for rho_db in grid]
    rows = [(rho_db, analytic_ser(constellation, config, epsilon_rel)) for rho_db, config in zip(grid, configs)]
    write_csv(out, SER_HEADER, rows)
    write_manifest(out, command='ser', configs=configs,
                   parameters={'modulation': constellation.name, 'rho_grid': grid, 'epsilon_rel': epsilon_rel})


@click.command('validate')
@config_argument
@modulation_option
@grid_option
@click.option('--symbols', type=click.IntRange(min=1), default=10 ** 6, show_default=True,
              help='Simulated symbols per grid point')
@click.option('--seed', type=click.IntRange(min=0), default=0, show_default=True,
              help='Run seed; grid point i uses seed + i')
@out_option
@perturb_option
@epsilon_option
@click.option('--corrupt-analytic', type=float, default=None, hidden=True,
              help='Multiply the analytic values by this factor')
@with_appcontext
@run_logging
@handle_errors
def validate_command(config_path: str, modulation: Optional[str], rho_grid: str, symbols: int, seed: int,
                     out: str, perturb: Optional[bool], epsilon: Optional[float],
                     corrupt_analytic: Optional[float]) -> None:
    """Analytic SER against a Monte Carlo simulation; exits with 4 when they disagree."""
    scenario_file = read_scenario_file(config_path)
    constellation = resolve_modulation(modulation, scenario_file)
    epsilon_rel = resolve_epsilon(perturb, epsilon, scenario_file)
    grid = parse_rho_grid(rho_grid)
    limit = app.config['VALIDATE_Z_LIMIT']

    configs = [scenario_file.system_config(rho_db) for rho_db in grid]
    rows = []  # type: List[Tuple[float, float, float, float, float]]
    for index, (rho_db, config) in enumerate(zip(grid, configs)):
        analytic = analytic_ser(constellation, config, epsilon_rel)
        if corrupt_analytic is not None:
            analytic *= corrupt_analytic
        estimate = simulate_ser(config, constellation, symbols, seed=seed + index,
                                chunk_symbols=app.config['MC_CHUNK_SYMBOLS'], threads=app.config['MC_THREADS'])
        rows.append((rho_db, analytic, estimate.ser, estimate.std_err, z_score(analytic, estimate.ser, symbols)))

    write_csv(out, VALIDATE_HEADER, rows)
    write_manifest(out, command='validate', configs=configs, seed=seed,
                   parameters={'modulation': constellation.name, 'rho_grid': grid, 'epsilon_rel': epsilon_rel,
                               'symbols': symbols, 'chunk_symbols': app.config['MC_CHUNK_SYMBOLS'],
                               'corrupt_analytic': corrupt_analytic})

    failed = [row[0] for row in rows if abs(row[4]) > limit]
    if failed:
        exit_with_error(message='Monte Carlo disagrees with the analytic SER beyond {} standard errors at {} dB'
                        .format(limit, ', '.join(format(rho, 'g') for rho in failed)),
                        exit_code=EXIT_VALIDATION_FAILED)
