import functools
import logging
from typing import Any, Callable

import click

from macrodiversity_mrc.exceptions import (CoincidentPowerError, CombinatorialBlowupError, InvalidParameterError,
                                           MacrodiversityError, NearSingularError, UndefinedMetricError)

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_DEGENERATE = 3
EXIT_VALIDATION_FAILED = 4
EXIT_UNDEFINED = 5


class ConfigFileError(click.ClickException):
    """
    An unreadable or invalid configuration file
    """
    exit_code = EXIT_USAGE


def exit_code_for(error: MacrodiversityError) -> int:
    if isinstance(error, (CoincidentPowerError, NearSingularError)):
        return EXIT_DEGENERATE
    if isinstance(error, UndefinedMetricError):
        return EXIT_UNDEFINED
    if isinstance(error, (InvalidParameterError, CombinatorialBlowupError)):
        return EXIT_USAGE
    return EXIT_FAILURE


def exit_with_error(*, message: str, exit_code: int) -> None:
    """
    Logs the message, prints it to standard error and ends the command with exit_code
    """
    logging.info(message)
    click.echo('Error: {}'.format(message), err=True)
    click.get_current_context().exit(exit_code)


def handle_errors(f: Callable) -> Callable:
    """
    Converts library errors raised by a command into its exit code
    """
    @functools.wraps(f)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return f(*args, **kwargs)
        except MacrodiversityError as e:
            logging.exception('Encountered exception: ' + str(e))
            exit_with_error(message=str(e), exit_code=exit_code_for(e))

    return wrapper
