import logging
import math
import os
from collections import OrderedDict
from typing import Any, Dict, List, Optional

import click
from flask import current_app as app
from flask.cli import with_appcontext

from macrodiversity_mrc.analysis.metrics import mean_sinr_metric, mp_ordering
from macrodiversity_mrc.analysis.modulation import modulation_by_name
from macrodiversity_mrc.analysis.scenarios import (FIGURES, METRIC_RHO_DB, TABLES, Scenario, figure_scenarios,
                                                   scenario_config, table_scenarios)
from macrodiversity_mrc.commands.ser import SER_HEADER, analytic_ser
from macrodiversity_mrc.commands.utils.config_utils import parse_rho_grid
from macrodiversity_mrc.commands.utils.error_utils import handle_errors
from macrodiversity_mrc.commands.utils.output_utils import write_csv, write_manifest
from macrodiversity_mrc.log.run_log import run_logging

LOGGER = logging.getLogger(__name__)

TABLE_HEADER = ['scenario', 'modulation', 'm_p_db', 'm_p_db_printed', 'm_p_deviation_db', 'm_p_rank',
                'floor', 'floor_printed', 'floor_relative_deviation', 'note']
FIGURE_HEADER = ['scenario', 'modulation', 'floor', 'floor_printed', 'floor_relative_deviation', 'csv', 'note']
AXIS_NOTE = 'SNR axis taken as the average SNR rho in dB'


def _relative_deviation(computed: float, printed: float) -> float:
    return (computed - printed) / printed


def _floor(scenario: Scenario) -> float:
    epsilon_rel = app.config['PERTURB_EPSILON_REL']
    return analytic_ser(modulation_by_name(scenario.modulation), scenario_config(scenario.name, math.inf, None),
                        epsilon_rel)


def _note(scenario: Scenario, *extra: str) -> str:
    notes = ['{} disputed: {}'.format(key, text) for key, text in sorted(scenario.notes.items())]
    return '; '.join(notes + list(extra))


def _table_rows(scenarios: List[Scenario]) -> List[List[Any]]:
    reports = OrderedDict((scenario.name, mean_sinr_metric(
        scenario_config(scenario.name, METRIC_RHO_DB, app.config['PERTURB_EPSILON_REL']))) for scenario in scenarios)
    ranks = {name: rank for rank, name in enumerate(mp_ordering(reports), start=1)}
    rows = []
    for scenario in scenarios:
        LOGGER.info('Reproducing {}'.format(scenario.name))
        metric = reports[scenario.name]
        floor = _floor(scenario)
        rows.append([scenario.name, scenario.modulation, metric.m_p_db, scenario.printed_mp_db,
                     metric.m_p_db - scenario.printed_mp_db, ranks[scenario.name], floor, scenario.printed_floor,
                     _relative_deviation(floor, scenario.printed_floor), _note(scenario)])
    return rows


def _figure_rows(figure: int, scenarios: List[Scenario], grid: List[float], out_dir: str) -> List[List[Any]]:
    epsilon_rel = app.config['PERTURB_EPSILON_REL']
    rows = []
    for scenario in scenarios:
        LOGGER.info('Computing the SER curve of {}'.format(scenario.name))
        modulation = modulation_by_name(scenario.modulation)
        configs = [scenario_config(scenario.name, rho_db, None) for rho_db in grid]
        curve = [(rho_db, analytic_ser(modulation, config, epsilon_rel)) for rho_db, config in zip(grid, configs)]
        path = os.path.join(out_dir, 'figure{}_{}.csv'.format(figure, scenario.name))
        write_csv(path, SER_HEADER, curve)
        write_manifest(path, command='reproduce', configs=configs,
                       parameters={'figure': figure, 'scenario': scenario.name, 'modulation': modulation.name,
                                   'rho_grid': grid, 'epsilon_rel': epsilon_rel})
        floor = _floor(scenario)
        rows.append([scenario.name, scenario.modulation, floor, scenario.printed_floor,
                     _relative_deviation(floor, scenario.printed_floor), os.path.basename(path),
                     _note(scenario, AXIS_NOTE)])
    return rows


@click.command('reproduce')
@click.option('--table', type=click.Choice([str(table) for table in TABLES]), default=None,
              help='Reproduce the metric and floor values of a table')
@click.option('--figure', type=click.Choice([str(figure) for figure in FIGURES]), default=None,
              help='Reproduce the SER curves of a figure')
@click.option('--out-dir', required=True, type=click.Path(file_okay=False), help='Directory for the CSV files')
@click.option('--rho-grid', default='0:5:40', show_default=True, help='Average SNR grid in dB for figures')
@with_appcontext
@run_logging
@handle_errors
def reproduce_command(table: Optional[str], figure: Optional[str], out_dir: str, rho_grid: str) -> None:
    """Reference tables and figure data of the built-in scenarios S1 to S20."""
    if (table is None) == (figure is None):
        raise click.UsageError('Give exactly one of --table and --figure')
    os.makedirs(out_dir, exist_ok=True)

    if table is not None:
        scenarios = table_scenarios(int(table))
        path = os.path.join(out_dir, 'table{}_summary.csv'.format(table))
        write_csv(path, TABLE_HEADER, _table_rows(scenarios))
        parameters = {'table': int(table), 'metric_rho_db': METRIC_RHO_DB}  # type: Dict[str, Any]
    else:
        grid = parse_rho_grid(rho_grid)
        scenarios = figure_scenarios(int(figure or 0))
        path = os.path.join(out_dir, 'figure{}_summary.csv'.format(figure))
        write_csv(path, FIGURE_HEADER, _figure_rows(int(figure or 0), scenarios, grid, out_dir))
        parameters = {'figure': int(figure or 0), 'rho_grid': grid}

    parameters['epsilon_rel'] = app.config['PERTURB_EPSILON_REL']
    write_manifest(path, command='reproduce', parameters=parameters,
                   configs=[scenario_config(scenario.name, math.inf) for scenario in scenarios])
    click.echo(path)
