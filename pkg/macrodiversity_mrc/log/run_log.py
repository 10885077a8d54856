import functools
import getpass
import json
import logging
import socket
from datetime import datetime, timezone, timedelta
from typing import Any, Callable, Dict, Optional

import click
from flask import current_app as flask_app, has_app_context

from macrodiversity_mrc.log import run_log_callback
from macrodiversity_mrc.log.run_log_model import RunLogParams

LOGGER = logging.getLogger(__name__)
EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)  # use POSIX epoch


def run_logging(f: Callable) -> Any:
    """
    Decorates a command function so that run log callbacks see every run: once before it starts and once after
    it ends, with its end time, output, error and exit code.

    :param f: function instance
    :return: wrapped function
    """
    @functools.wraps(f)
    def wrapper(*args: Any,
                **kwargs: Any) -> Any:
        metrics = _build_metrics(f.__name__, *args, **kwargs)
        LOGGER.info('Running {} for {}'.format(metrics['command'], metrics['user']))
        run_log_callback.on_pre_execution(RunLogParams(**metrics))
        output = None
        error = None  # type: Optional[BaseException]
        try:
            output = f(*args, **kwargs)
            return output
        except BaseException as e:
            error = e
            raise
        finally:
            metrics.update(end_epoch_ms=get_epoch_millisec(),
                           output=_jsonable(output),
                           exit_code=exit_code_of(error))
            if error is not None and not isinstance(error, click.exceptions.Exit):
                metrics['error'] = error
            LOGGER.info('{} finished with exit code {} after {} ms'.format(
                metrics['command'], metrics['exit_code'], metrics['end_epoch_ms'] - metrics['start_epoch_ms']))
            run_log_callback.on_post_execution(RunLogParams(**metrics))

    return wrapper


def exit_code_of(error: Optional[BaseException]) -> int:
    """
    Exit code a command ends with when it raised error (None for a normal return)
    """
    if error is None:
        return 0
    if isinstance(error, click.exceptions.Exit):
        return error.exit_code
    if isinstance(error, click.ClickException):
        return error.exit_code
    if isinstance(error, SystemExit):
        return error.code if isinstance(error.code, int) else 1
    return 1


def get_epoch_millisec() -> int:
    return (datetime.now(timezone.utc) - EPOCH) // timedelta(milliseconds=1)


def _jsonable(output: Any) -> Any:
    try:
        return json.dumps(output)
    except (TypeError, ValueError):
        return output


def _current_user() -> str:
    if has_app_context() and flask_app.config.get('RUN_LOG_USER_METHOD'):
        return flask_app.config['RUN_LOG_USER_METHOD']()
    try:
        return getpass.getuser()
    except Exception:
        # no login name in minimal containers
        return 'unknown'


def _build_metrics(func_name: str,
                   *args: Any,
                   **kwargs: Any) -> Dict[str, Any]:
    """
    Builds the RunLogParams fields known before the command runs. Click passes options as keyword arguments,
    so keyword_args_json holds the command line as parsed.
    :param func_name:
    :param args:
    :param kwargs:
    :return: Dict that matches RunLogParams variable
    """
    return {
        'command': func_name.replace('_command', ''),
        'start_epoch_ms': get_epoch_millisec(),
        'host_name': socket.gethostname(),
        'pos_args_json': json.dumps(args, default=str),
        'keyword_args_json': json.dumps(kwargs, sort_keys=True, default=str),
        'user': _current_user(),
    }
