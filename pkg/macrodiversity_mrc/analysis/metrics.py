import logging
import math
from typing import List, Mapping, Optional

import numpy as np

from macrodiversity_mrc.analysis.mcsim import generate_channel, make_generator
from macrodiversity_mrc.exceptions import InvalidParameterError, UndefinedMetricError
from macrodiversity_mrc.models.results import MeanEstimate, MetricReport
from macrodiversity_mrc.models.system_config import SystemConfig

LOGGER = logging.getLogger(__name__)

MC_BATCH_SAMPLES = 2 ** 16


def mean_sinr_metric(config: SystemConfig) -> MetricReport:
    """
    Closed-form power metric approximating the mean SINR at the combiner output,

        m_p = (Tr(P_1)^2 + Tr(P_1^2)) / Tr(sum_k P_1 P_k + sigma^2 P_1)

    :param config: SystemConfig
    :return: MetricReport
    :raises UndefinedMetricError: when there is neither interference nor noise
    """
    desired = config.desired.entries
    numerator = config.desired.trace ** 2 + math.fsum(power * power for power in desired)
    cross = [math.fsum(p * q for p, q in zip(desired, interferer.entries)) for interferer in config.interferers]
    denominator = math.fsum(cross + [config.noise_power * config.desired.trace])
    if not denominator > 0.0:
        raise UndefinedMetricError('The power metric is undefined without interference or noise')
    return MetricReport(numerator=numerator, denominator=denominator)


def mc_mean_sinr(config: SystemConfig, n_samples: int, seed: Optional[int] = None,
                 batch_samples: int = MC_BATCH_SAMPLES) -> MeanEstimate:
    """
    Sample mean of (h_1^H h_1)^2 / (h_1^H (sum_k h_k h_k^H + sigma^2 I) h_1) over independent channel draws

    :param config: SystemConfig
    :param n_samples: number of channel draws
    :param seed: seed of the generator, drawn from the operating system when omitted
    :param batch_samples: draws generated at once
    :return: MeanEstimate
    """
    if n_samples < 1:
        raise InvalidParameterError('n_samples must be at least 1, got {!r}'.format(n_samples))
    mean_sinr_metric(config)
    rng, seed = make_generator(seed)

    total = 0.0
    total_sq = 0.0
    remaining = n_samples
    while remaining:
        size = min(batch_samples, remaining)
        channel = generate_channel(config, rng, size)
        h1 = channel.h_columns[:, :, 0]
        x = np.sum(np.abs(h1) ** 2, axis=1)
        y = config.noise_power * x
        for column in range(1, channel.h_columns.shape[2]):
            y = y + np.abs(np.sum(np.conj(h1) * channel.h_columns[:, :, column], axis=1)) ** 2
        sinr = x * x / y
        total += float(np.sum(sinr))
        total_sq += float(np.sum(sinr * sinr))
        remaining -= size

    mean = total / n_samples
    variance = max(total_sq / n_samples - mean * mean, 0.0)
    std_err = math.sqrt(variance / max(n_samples - 1, 1))
    LOGGER.debug('Mean SINR {!r} +- {!r} over {} draws'.format(mean, std_err, n_samples))
    return MeanEstimate(mean=mean, std_err=std_err, n_samples=n_samples, seed=seed)


def mp_ordering(reports: Mapping[str, MetricReport]) -> List[str]:
    """
    Names ordered by decreasing m_p
    """
    return sorted(reports, key=lambda name: reports[name].m_p_linear, reverse=True)
