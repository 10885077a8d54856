from flask import Flask

from macrodiversity_mrc.commands.reproduce import reproduce_command
from macrodiversity_mrc.commands.scalar import floor_command, metric_command, outage_command
from macrodiversity_mrc.commands.ser import ser_command, validate_command


def init_commands(app: Flask) -> None:
    for command in (ser_command, validate_command, floor_command, metric_command, outage_command,
                    reproduce_command):
        app.cli.add_command(command)
