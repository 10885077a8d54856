"""
Monte Carlo link simulator: r = h_1 s_1 + sum_k h_k s_k + n, combined by MRC and detected by minimum distance.

Runs are split into fixed-size chunks, each with its own generator spawned from the run seed, so the estimate
depends only on (config, modulation, n_symbols, seed, chunk size) and not on the number of worker threads.
Nothing in here calls into the closed forms.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Tuple

import numpy as np

from macrodiversity_mrc.analysis.gamma_dist import InterfererMagnitudeProfile, unit_profile
from macrodiversity_mrc.analysis.modulation import Modulation
from macrodiversity_mrc.exceptions import DegenerateChannelError, InvalidParameterError
from macrodiversity_mrc.models.results import SerEstimate
from macrodiversity_mrc.models.system_config import SystemConfig

LOGGER = logging.getLogger(__name__)

RNG_ALGORITHM = 'PCG64'
MC_CHUNK_SYMBOLS = 2 ** 16


class ChannelSample:
    """
    h_columns[s, i, k] is the gain from source k (0 is the desired source) to antenna i in draw s;
    noise[s, i] the noise on antenna i
    """
    def __init__(self, h_columns: np.ndarray, noise: np.ndarray) -> None:
        self.h_columns = h_columns
        self.noise = noise

    @property
    def size(self) -> int:
        return self.h_columns.shape[0]

    def __repr__(self) -> str:
        return 'ChannelSample(size={}, n_r={}, sources={})'.format(*self.h_columns.shape)


def make_generator(seed: Optional[int] = None) -> Tuple[np.random.Generator, int]:
    """
    PCG64 generator for seed, and the seed actually used (fresh entropy when seed is None)
    """
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)
    return np.random.Generator(np.random.PCG64(seed)), seed


def _complex_gaussian(rng: np.random.Generator, variance: np.ndarray, shape: Tuple[int, ...]) -> np.ndarray:
    scale = np.sqrt(variance / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def power_columns(config: SystemConfig) -> np.ndarray:
    """
    n_R x (1 + N) matrix of link powers, the desired source first
    """
    return np.array([config.desired.entries] + [interferer.entries for interferer in config.interferers]).T


def generate_channel(config: SystemConfig, rng: np.random.Generator, size: int = 1) -> ChannelSample:
    """
    Draws size independent channels with E{|h_ik|^2} = P_ik and noise with E{|n_i|^2} = sigma^2,
    real and imaginary parts carrying half the variance each.
    """
    powers = power_columns(config)
    h_columns = _complex_gaussian(rng, powers, (size,) + powers.shape)
    noise = _complex_gaussian(rng, np.full(config.n_r, config.noise_power), (size, config.n_r))
    return ChannelSample(h_columns, noise)


def mrc_combine(h1: np.ndarray, r: np.ndarray) -> complex:
    """
    h_1^H r / (h_1^H h_1)

    :raises DegenerateChannelError: when h_1 is zero
    """
    h1 = np.asarray(h1, dtype=complex)
    energy = float(np.vdot(h1, h1).real)
    if energy == 0.0:
        raise DegenerateChannelError('Cannot combine with an all-zero desired channel')
    return complex(np.vdot(h1, np.asarray(r, dtype=complex)) / energy)


def _combine_batch(h1: np.ndarray, r: np.ndarray) -> np.ndarray:
    energy = np.sum(np.abs(h1) ** 2, axis=1)
    if np.any(energy == 0.0):
        raise DegenerateChannelError('All-zero desired channel in a simulated batch')
    return np.sum(np.conj(h1) * r, axis=1) / energy


def _count_errors(config: SystemConfig, modulation: Modulation, n_symbols: int,
                  seed_sequence: np.random.SeedSequence) -> int:
    rng = np.random.Generator(np.random.PCG64(seed_sequence))
    channel = generate_channel(config, rng, n_symbols)
    sources = channel.h_columns.shape[2]
    sent = rng.integers(modulation.order, size=(n_symbols, sources))
    symbols = modulation.points[sent]
    received = np.einsum('sik,sk->si', channel.h_columns, symbols) + channel.noise
    combined = _combine_batch(channel.h_columns[:, :, 0], received)
    return int(np.count_nonzero(modulation.detect(combined) != sent[:, 0]))


def merge_estimates(estimates: Iterable[SerEstimate]) -> SerEstimate:
    """
    Pools substream estimates by adding their error and symbol counts
    """
    estimates = list(estimates)
    if not estimates:
        raise InvalidParameterError('Nothing to merge')
    first = estimates[0]
    return SerEstimate(n_errors=sum(estimate.n_errors for estimate in estimates),
                       n_symbols=sum(estimate.n_symbols for estimate in estimates),
                       seed=first.seed,
                       rng_algorithm=first.rng_algorithm,
                       chunk_symbols=first.chunk_symbols)


def simulate_ser(config: SystemConfig,
                 modulation: Modulation,
                 n_symbols: int,
                 seed: Optional[int] = None,
                 chunk_symbols: int = MC_CHUNK_SYMBOLS,
                 threads: int = 1) -> SerEstimate:
    """
    Estimates the SER of MRC with minimum-distance detection. Desired and interferer symbols are drawn
    uniformly from the constellation.

    :param config: SystemConfig
    :param modulation: Modulation
    :param n_symbols: number of simulated symbols
    :param seed: run seed, drawn from the operating system when omitted and recorded in the estimate
    :param chunk_symbols: symbols per substream
    :param threads: worker threads; the result does not depend on it
    :return: SerEstimate
    """
    if n_symbols < 1:
        raise InvalidParameterError('n_symbols must be at least 1, got {!r}'.format(n_symbols))
    if chunk_symbols < 1:
        raise InvalidParameterError('chunk_symbols must be at least 1, got {!r}'.format(chunk_symbols))
    _, seed = make_generator(seed)

    n_chunks = int(math.ceil(n_symbols / chunk_symbols))
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [min(chunk_symbols, n_symbols - index * chunk_symbols) for index in range(n_chunks)]

    def run_chunk(index: int) -> SerEstimate:
        errors = _count_errors(config, modulation, sizes[index], children[index])
        return SerEstimate(n_errors=errors, n_symbols=sizes[index], seed=seed, rng_algorithm=RNG_ALGORITHM,
                           chunk_symbols=chunk_symbols)

    if threads > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            estimates = list(executor.map(run_chunk, range(n_chunks)))
    else:
        estimates = [run_chunk(index) for index in range(n_chunks)]

    estimate = merge_estimates(estimates)
    LOGGER.debug('Simulated {} symbols of {} in {} chunks: {!r}'.format(n_symbols, modulation.name, n_chunks,
                                                                       estimate))
    return estimate


def sample_gamma(config: SystemConfig, profile: Optional[InterfererMagnitudeProfile] = None,
                 n: int = 1, seed: Optional[int] = None) -> List[float]:
    """
    Draws of g = X^2 / Y, X = h_1^H h_1 and Y = h_1^H D h_1, for one interferer magnitude profile
    """
    if n < 0:
        raise InvalidParameterError('n must be nonnegative, got {!r}'.format(n))
    if n == 0:
        return []
    profile = profile or unit_profile(config)
    levels = np.full(config.n_r, config.noise_power)
    for interferer, magnitude in zip(config.interferers, profile.magnitudes):
        levels = levels + magnitude * np.asarray(interferer.entries)
    rng, _ = make_generator(seed)
    h1 = _complex_gaussian(rng, np.asarray(config.desired.entries), (n, config.n_r))
    energy = np.abs(h1) ** 2
    x = np.sum(energy, axis=1)
    y = energy @ levels
    with np.errstate(divide='ignore'):
        return [float(value) for value in x * x / y]
