from typing import Any, Optional


class RunLogParams(object):
    """
    One command run as seen by run log callbacks. End time, output, error and exit code are only set after
    the run.
    """
    def __init__(self, *,
                 command: str,
                 start_epoch_ms: int,
                 user: str,
                 host_name: str,
                 pos_args_json: str,
                 keyword_args_json: str,
                 end_epoch_ms: Optional[int] = None,
                 output: Any = None,
                 error: Optional[BaseException] = None,
                 exit_code: Optional[int] = None) -> None:
        self.command = command
        self.start_epoch_ms = start_epoch_ms
        self.user = user
        self.host_name = host_name
        self.pos_args_json = pos_args_json
        self.keyword_args_json = keyword_args_json
        self.end_epoch_ms = end_epoch_ms
        self.output = output
        self.error = error
        self.exit_code = exit_code

    @property
    def finished(self) -> bool:
        return self.exit_code is not None

    @property
    def elapsed_ms(self) -> Optional[int]:
        if self.end_epoch_ms is None:
            return None
        return self.end_epoch_ms - self.start_epoch_ms

    def __repr__(self) -> str:
        fields = ', '.join('{}={!r}'.format(name, value) for name, value in vars(self).items())
        return 'RunLogParams({})'.format(fields)
