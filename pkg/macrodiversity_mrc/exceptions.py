from typing import Iterable, Optional, Sequence, Tuple


class MacrodiversityError(Exception):
    """
    Base class for every error raised by the analysis library
    """
    pass


class InvalidParameterError(MacrodiversityError):
    """
    Raised when a power matrix, scenario or modulation parameter is outside its domain
    """
    pass


class CoincidentPowerError(MacrodiversityError):
    """
    Raised when desired-source powers coincide on two or more antennas. The closed forms need pairwise
    distinct powers; callers are expected to run perturb_coincident_powers first.
    """
    def __init__(self, groups: Iterable[Sequence[int]], message: Optional[str] = None) -> None:
        self.groups = [tuple(group) for group in groups]
        if message is None:
            described = ', '.join('antennas {}'.format('/'.join(str(i + 1) for i in group))
                                  for group in self.groups)
            message = 'Coincident desired powers on {}; perturb the configuration first'.format(described)
        super().__init__(message)


class NearSingularError(MacrodiversityError):
    """
    Raised when a partial-fraction denominator of the mixture coefficients falls below the degeneracy threshold
    """
    def __init__(self, triple: Tuple[int, int, int], ratio: float) -> None:
        self.triple = triple
        self.ratio = ratio
        super().__init__('Near-singular coefficient denominator for antennas {}, relative size {:.3e}; '
                         'perturb the configuration first'.format(tuple(index + 1 for index in triple), ratio))


class AccuracyError(MacrodiversityError):
    """
    Raised when a result cannot be resolved to the requested accuracy
    """
    pass


class OutOfRegionError(MacrodiversityError):
    """
    Raised when an integral is evaluated outside its region of convergence
    """
    pass


class InternalConsistencyError(MacrodiversityError):
    """
    Raised when an internally assembled quantity violates a guarantee of the derivation
    """
    pass


class UndefinedMetricError(MacrodiversityError):
    """
    Raised when a power metric has a zero denominator
    """
    pass


class CombinatorialBlowupError(MacrodiversityError):
    """
    Raised when the number of interferer magnitude profiles exceeds the configured cap
    """
    pass


class OracleFailureError(MacrodiversityError):
    """
    Raised by the quadrature references when adaptive integration does not converge
    """
    pass


class DegenerateChannelError(MacrodiversityError):
    """
    Raised when the combiner is asked to normalize by an all-zero desired channel
    """
    pass
