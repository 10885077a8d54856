import os
from typing import Callable, Optional  # noqa: F401


class Config:
    LOG_FORMAT = '%(asctime)s.%(msecs)03d [%(levelname)s] %(module)s.%(funcName)s:%(lineno)d (%(process)d:' \
                 + '%(threadName)s) - %(message)s'
    LOG_DATE_FORMAT = '%Y-%m-%dT%H:%M:%S%z'
    LOG_LEVEL = 'INFO'

    # Path to the logging configuration file to be used by `fileConfig()` method
    # https://docs.python.org/3/library/logging.config.html#logging.config.fileConfig
    # LOG_CONFIG_FILE = 'macrodiversity_mrc/logging.conf'
    LOG_CONFIG_FILE = None  # type: Optional[str]

    # Relative offset applied to coincident desired powers and the tolerance of the epsilon/2 recheck
    PERTURB_EPSILON_REL = 1e-5  # type: float
    PERTURB_STABILITY_TOLERANCE = 1e-4  # type: float

    # Relative size below which a coefficient denominator is reported as near-singular
    DEGENERACY_THRESHOLD = 1e-9  # type: float

    # Largest excursion of a CDF outside [0, 1] that is silently clamped
    CDF_CLAMP_TOLERANCE = 1e-9  # type: float

    # Digits of cancellation tolerated in double precision before switching to extended precision
    CANCELLATION_DIGITS = 4  # type: int

    # Cap on the number of interferer magnitude profiles averaged over
    MAX_SYMBOL_PROFILES = 4096  # type: int

    # Monte Carlo settings
    MC_CHUNK_SYMBOLS = 2 ** 16  # type: int
    MC_THREADS = int(os.environ.get('MRC_THREADS', '1'))  # type: int

    # |z| above which `validate` reports a failure
    VALIDATE_Z_LIMIT = 3.0  # type: float

    # Output settings
    CSV_FLOAT_FORMAT = '.17g'  # type: str
    MANIFEST_SUFFIX = '.manifest.json'  # type: str

    # Callable returning the user recorded in run logs. Defaults to the login name.
    RUN_LOG_USER_METHOD = None  # type: Optional[Callable[[], str]]


class LocalConfig(Config):
    DEBUG = False
    TESTING = False
    LOG_LEVEL = 'DEBUG'


class TestConfig(LocalConfig):
    TESTING = True
    LOG_LEVEL = 'WARNING'
    MC_THREADS = 2
    MC_CHUNK_SYMBOLS = 2 ** 14
    RUN_LOG_USER_METHOD = staticmethod(lambda: 'test_user')  # type: ignore
