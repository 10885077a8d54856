import itertools
import logging
import math
from collections import Counter, OrderedDict
from typing import Dict, List, Sequence, Tuple

import numpy as np

from macrodiversity_mrc.analysis.gamma_dist import InterfererMagnitudeProfile
from macrodiversity_mrc.exceptions import CombinatorialBlowupError, InvalidParameterError
from macrodiversity_mrc.models.system_config import PowerMatrix, SystemConfig

LOGGER = logging.getLogger(__name__)

MAX_SYMBOL_PROFILES = 4096
# squared magnitudes closer than this are the same level
_MAGNITUDE_DECIMALS = 12


class SerTerm:
    """
    One term a * E{Q(sqrt(b g))}, or -a * E{Q^2(sqrt(b g))} when squared
    """
    def __init__(self, a: float, b: float, squared: bool = False) -> None:
        if not b > 0.0:
            raise InvalidParameterError('SER terms need b > 0, got {!r}'.format(b))
        self.a = float(a)
        self.b = float(b)
        self.squared = squared

    def __repr__(self) -> str:
        return 'SerTerm(a={!r}, b={!r}, squared={!r})'.format(self.a, self.b, self.squared)


class Modulation:
    """
    Constellation with unit average energy and the decomposition of its exact SER over Rayleigh g
    into Q and Q^2 averages.
    """
    def __init__(self, name: str, points: Sequence[complex], ser_terms: Sequence[SerTerm]) -> None:
        self.name = name
        self.points = np.asarray(points, dtype=complex)
        self.ser_terms = tuple(ser_terms)
        energy = float(np.mean(np.abs(self.points) ** 2))
        if abs(energy - 1.0) > 1e-12:
            raise InvalidParameterError('{} constellation has average energy {}'.format(name, energy))

    @property
    def order(self) -> int:
        return len(self.points)

    def magnitude_levels(self) -> List[Tuple[float, float]]:
        """
        Distinct squared magnitudes of a uniformly drawn symbol and their probabilities
        """
        counts = Counter(round(float(value), _MAGNITUDE_DECIMALS) for value in np.abs(self.points) ** 2)
        return [(level, count / self.order) for level, count in sorted(counts.items())]

    def detect(self, samples: np.ndarray) -> np.ndarray:
        """
        Index of the nearest constellation point for every sample
        """
        samples = np.asarray(samples)
        best = np.full(samples.shape, np.inf)
        indices = np.zeros(samples.shape, dtype=np.int64)
        for index, point in enumerate(self.points):
            distance = np.abs(samples - point)
            closer = distance < best
            best = np.where(closer, distance, best)
            indices[closer] = index
        return indices

    def __repr__(self) -> str:
        return 'Modulation({!r})'.format(self.name)


def bpsk() -> Modulation:
    return Modulation('bpsk', [1.0, -1.0], [SerTerm(1.0, 2.0)])


def qpsk() -> Modulation:
    points = [complex(i, q) / math.sqrt(2.0) for i in (1, -1) for q in (1, -1)]
    return Modulation('qpsk', points, [SerTerm(2.0, 1.0), SerTerm(1.0, 1.0, squared=True)])


def square_qam(order: int) -> Modulation:
    """
    Square M-QAM with SER = a E{Q(sqrt(b g))} - a' E{Q^2(sqrt(b g))},
    a = 4(1 - 1/sqrt(M)), a' = 4(1 - 1/sqrt(M))^2, b = 3/(M - 1)
    """
    side = int(round(math.sqrt(order)))
    if order < 4 or side * side != order or side % 2:
        raise InvalidParameterError('Square QAM needs an even square order, got {}'.format(order))
    if order == 4:
        return qpsk()
    levels = np.arange(-(side - 1), side, 2, dtype=float)
    scale = math.sqrt(2.0 * (order - 1) / 3.0)
    points = [complex(i, q) / scale for i in levels for q in levels]
    edge = 1.0 - 1.0 / side
    b = 3.0 / (order - 1)
    return Modulation('{}qam'.format(order), points, [SerTerm(4.0 * edge, b), SerTerm(4.0 * edge * edge, b, True)])


MODULATIONS = OrderedDict([
    ('bpsk', bpsk),
    ('qpsk', qpsk),
    ('16qam', lambda: square_qam(16)),
    ('64qam', lambda: square_qam(64)),
    ('256qam', lambda: square_qam(256)),
])


def modulation_by_name(name: str) -> Modulation:
    key = name.strip().lower().replace('-', '')
    if key == '4qam':
        key = 'qpsk'
    if key not in MODULATIONS:
        raise InvalidParameterError('Unknown modulation {!r}; choose one of {}'.format(name, ', '.join(MODULATIONS)))
    return MODULATIONS[key]()


def _multisets(levels: List[Tuple[float, float]], size: int) -> List[Tuple[Tuple[float, ...], float]]:
    multisets = []
    for combination in itertools.combinations_with_replacement(range(len(levels)), size):
        counts = Counter(combination)
        weight = math.factorial(size)
        for index, count in counts.items():
            weight = weight / math.factorial(count) * levels[index][1] ** count
        multisets.append((tuple(levels[index][0] for index in combination), weight))
    return multisets


def magnitude_profiles(modulation: Modulation, config: SystemConfig,
                       cap: int = MAX_SYMBOL_PROFILES) -> List[InterfererMagnitudeProfile]:
    """
    Enumerates the distinct interferer magnitude combinations with their probabilities.

    Interferers with identical power matrices are interchangeable, so only the multiset of their magnitudes
    matters; across distinct matrices the combinations are enumerated in full.

    :raises CombinatorialBlowupError: when more than cap profiles would be needed
    """
    levels = modulation.magnitude_levels()
    if not config.interferers or len(levels) == 1:
        magnitude = levels[0][0]
        return [InterfererMagnitudeProfile([magnitude] * len(config.interferers), 1.0)]

    groups = OrderedDict()  # type: Dict[PowerMatrix, List[int]]
    for index, interferer in enumerate(config.interferers):
        groups.setdefault(interferer, []).append(index)

    count = 1
    for members in groups.values():
        count *= math.comb(len(levels) + len(members) - 1, len(members))
    if count > cap:
        raise CombinatorialBlowupError('{} interferers of {} need {} magnitude profiles, more than the cap of {}; '
                                       'merge interferers with equal power matrices or raise MAX_SYMBOL_PROFILES'
                                       .format(len(config.interferers), modulation.name, count, cap))

    per_group = [_multisets(levels, len(members)) for members in groups.values()]
    profiles = []
    for choice in itertools.product(*per_group):
        magnitudes = [0.0] * len(config.interferers)
        weight = 1.0
        for members, (values, probability) in zip(groups.values(), choice):
            for index, value in zip(members, values):
                magnitudes[index] = value
            weight *= probability
        profiles.append(InterfererMagnitudeProfile(magnitudes, weight))
    LOGGER.debug('Enumerated {} magnitude profiles for {}'.format(len(profiles), modulation.name))
    return profiles
