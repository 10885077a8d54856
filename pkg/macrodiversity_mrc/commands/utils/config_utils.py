import json
import logging
import math
from typing import List, Optional

import click
from flask import current_app as app
from marshmallow import ValidationError

from macrodiversity_mrc.analysis.modulation import Modulation, modulation_by_name
from macrodiversity_mrc.commands.utils.error_utils import ConfigFileError
from macrodiversity_mrc.exceptions import InvalidParameterError
from macrodiversity_mrc.models.scenario_file import ScenarioFile, load_scenario_file

LOGGER = logging.getLogger(__name__)

DEFAULT_MODULATION = 'bpsk'


def _describe(messages: object, prefix: str = '') -> List[str]:
    if isinstance(messages, dict):
        lines = []
        for key, value in messages.items():
            label = str(key) if key != '_schema' else 'config'
            lines.extend(_describe(value, '{}{}'.format(prefix + '.' if prefix else '', label)))
        return lines
    if isinstance(messages, list) and all(isinstance(message, str) for message in messages):
        return ['{}: {}'.format(prefix or 'config', message) for message in messages]
    return ['{}: {}'.format(prefix or 'config', messages)]


def read_scenario_file(path: str) -> ScenarioFile:
    """
    Loads a configuration file, turning every problem into a ConfigFileError that names the line (for
    malformed JSON) or the field (for schema violations)
    """
    try:
        with open(path) as config_file:
            text = config_file.read()
    except OSError as e:
        raise ConfigFileError('Cannot read {}: {}'.format(path, e.strerror))
    try:
        return load_scenario_file(text)
    except json.JSONDecodeError as e:
        raise ConfigFileError('{}: line {}, column {}: {}'.format(path, e.lineno, e.colno, e.msg))
    except ValidationError as e:
        raise ConfigFileError('{}: {}'.format(path, '; '.join(_describe(e.messages))))


def resolve_modulation(name: Optional[str], scenario_file: ScenarioFile) -> Modulation:
    try:
        return modulation_by_name(name or scenario_file.modulation or DEFAULT_MODULATION)
    except InvalidParameterError as e:
        raise click.BadParameter(str(e), param_hint='--modulation')


def resolve_epsilon(perturb: Optional[bool], epsilon: Optional[float], scenario_file: ScenarioFile) -> Optional[float]:
    """
    Relative perturbation for coincident desired powers, or None when configurations are used as given.
    The flag wins over the file; without the flag the file's perturb_epsilon_rel decides.
    """
    if perturb is None:
        perturb = scenario_file.perturb_epsilon_rel is not None or epsilon is not None
    if not perturb:
        return None
    return epsilon or scenario_file.perturb_epsilon_rel or app.config['PERTURB_EPSILON_REL']


def parse_rho_grid(text: str) -> List[float]:
    """
    'start:step:stop' (stop included when it falls on the grid), a comma separated list, or '' for no points.
    Values are in dB; 'inf' is accepted in lists.
    """
    text = text.strip()
    if not text:
        return []
    if ':' in text:
        parts = text.split(':')
        if len(parts) != 3:
            raise click.BadParameter('Expected start:step:stop, got {!r}'.format(text), param_hint='--rho-grid')
        try:
            start, step, stop = (float(part) for part in parts)
        except ValueError:
            raise click.BadParameter('Grid bounds must be numbers, got {!r}'.format(text), param_hint='--rho-grid')
        if not step > 0.0 or not math.isfinite(start) or not math.isfinite(stop):
            raise click.BadParameter('Grid step must be positive and bounds finite, got {!r}'.format(text),
                                     param_hint='--rho-grid')
        if stop < start:
            return []
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return [start + index * step for index in range(count)]
    try:
        values = [float(part) for part in text.split(',')]
    except ValueError:
        raise click.BadParameter('Grid values must be numbers, got {!r}'.format(text), param_hint='--rho-grid')
    if any(math.isnan(value) for value in values):
        raise click.BadParameter('Grid values must not be NaN', param_hint='--rho-grid')
    return values
