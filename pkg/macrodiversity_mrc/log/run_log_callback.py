"""
Registry of run log callbacks. Module level lists hold the callbacks so that plugins registered once are
used by every command executed in the same process.
"""

import logging
from importlib.metadata import entry_points
from typing import Any, Callable, Iterable, List  # noqa: F401

from macrodiversity_mrc.log.run_log_model import RunLogParams

LOGGER = logging.getLogger(__name__)

PRE_EXEC_GROUP = 'run_log.pre_exec.plugin'
POST_EXEC_GROUP = 'run_log.post_exec.plugin'

__pre_exec_callbacks = []  # type: List[Callable[[RunLogParams], None]]
__post_exec_callbacks = []  # type: List[Callable[[RunLogParams], None]]


def register_pre_exec_callback(run_log_callback: Callable[[RunLogParams], None]) -> None:
    """
    Registers a callback invoked before a command runs.
    :param run_log_callback: callable accepting a RunLogParams
    :return: None
    """
    LOGGER.debug('Adding {} to pre execution callback'.format(run_log_callback))
    __pre_exec_callbacks.append(run_log_callback)


def register_post_exec_callback(run_log_callback: Callable[[RunLogParams], None]) -> None:
    """
    Registers a callback invoked after a command finished, successfully or not.
    :param run_log_callback: callable accepting a RunLogParams
    :return: None
    """
    LOGGER.debug('Adding {} to post execution callback'.format(run_log_callback))
    __post_exec_callbacks.append(run_log_callback)


def unregister_callback(run_log_callback: Callable[[RunLogParams], None]) -> None:
    for callbacks in (__pre_exec_callbacks, __post_exec_callbacks):
        while run_log_callback in callbacks:
            callbacks.remove(run_log_callback)


def on_pre_execution(run_log_params: RunLogParams) -> None:
    """
    Calls callbacks before execution.
    Note that any exception from callback will be logged but won't be propagated.
    :param run_log_params:
    :return: None
    """
    LOGGER.debug('Calling callbacks: {}'.format(__pre_exec_callbacks))
    for call_back_function in __pre_exec_callbacks:
        try:
            call_back_function(run_log_params)
        except Exception:
            logging.exception('Failed on pre-execution callback using {}'.format(call_back_function))


def on_post_execution(run_log_params: RunLogParams) -> None:
    """
    Calls callbacks after execution, when end time, output and error are known.
    Note that any exception from callback will be logged but won't be propagated.
    :param run_log_params:
    :return: None
    """
    LOGGER.debug('Calling callbacks: {}'.format(__post_exec_callbacks))
    for call_back_function in __post_exec_callbacks:
        try:
            call_back_function(run_log_params)
        except Exception:
            logging.exception('Failed on post-execution callback using {}'.format(call_back_function))


def logging_run_log(run_log_params: RunLogParams) -> None:
    """
    A run log callback that just logs the RunLogParams that it receives.
    :param run_log_params:
    :return: None
    """
    if LOGGER.isEnabledFor(logging.DEBUG):
        LOGGER.debug('logging_run_log: {}'.format(run_log_params))


def _iter_entry_points(group: str) -> Iterable[Any]:
    try:
        return entry_points(group=group)  # type: ignore
    except TypeError:
        # Python < 3.10 returns a mapping of group name to entry points
        return entry_points().get(group, [])  # type: ignore


def register_run_logs() -> None:
    """
    Retrieve declared run log callbacks from the two entry point groups:
     1. "run_log.pre_exec.plugin": callback for pre-execution
     2. "run_log.post_exec.plugin": callback for post-execution
    :return: None
    """
    for entry_point in _iter_entry_points(POST_EXEC_GROUP):
        LOGGER.info('Registering post_exec run_log entry_point: {}'.format(entry_point))
        register_post_exec_callback(entry_point.load())

    for entry_point in _iter_entry_points(PRE_EXEC_GROUP):
        LOGGER.info('Registering pre_exec run_log entry_point: {}'.format(entry_point))
        register_pre_exec_callback(entry_point.load())


register_run_logs()
