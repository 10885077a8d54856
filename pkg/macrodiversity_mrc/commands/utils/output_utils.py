import csv
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

import click
from flask import current_app as app

from macrodiversity_mrc.models.run_manifest import RunManifest, write_run_manifest
from macrodiversity_mrc.models.system_config import SystemConfig

LOGGER = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    if isinstance(value, float):
        return format(value, app.config['CSV_FLOAT_FORMAT'])
    return '' if value is None else str(value)


def write_csv(path: str, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    """
    Writes rows under header, floats with enough digits to parse back to the same value
    """
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', newline='') as csv_file:
        writer = csv.writer(csv_file, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
    LOGGER.info('Wrote {} rows to {}'.format(len(rows), path))


def manifest_path(output_path: str) -> str:
    return output_path + app.config['MANIFEST_SUFFIX']


def write_manifest(output_path: str, *,
                   command: str,
                   configs: Optional[List[SystemConfig]] = None,
                   parameters: Optional[Dict[str, Any]] = None,
                   seed: Optional[int] = None) -> str:
    """
    Writes the sidecar manifest of output_path and returns its path
    """
    path = manifest_path(output_path)
    write_run_manifest(path, RunManifest(command=command, configs=configs, parameters=parameters, seed=seed,
                                         outputs=[output_path]))
    return path


def echo_values(values: Dict[str, Any]) -> None:
    """
    Prints one `name value` line per entry
    """
    for name, value in values.items():
        click.echo('{} {}'.format(name, format_value(value)))
