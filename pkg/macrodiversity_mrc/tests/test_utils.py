import json
import math
import os
from typing import Any, Dict, Optional, Sequence

from mpmath.ctx_mp import MPContext
from scipy import special

from macrodiversity_mrc.models.system_config import PowerMatrix, SystemConfig

TEST_SEED = 20240611

_mp = MPContext()
_mp.dps = 30


def two_antenna_config(desired: Sequence[float] = (2.0, 1.0)) -> SystemConfig:
    """
    Two antennas with interference-plus-noise levels D = (1, 2): no interference on the first antenna, a unit
    interferer on the second, unit noise
    """
    return SystemConfig(PowerMatrix(desired, 'desired'), [PowerMatrix([0.0, 1.0], 'interferer')], 1.0)


def two_antenna_cdf(r: float) -> float:
    """
    P(g < r) for two_antenna_config() with desired powers (2, 1), integrated by hand from the joint density
    (1/2) e^{-y/2} on x < y < 2x
    """
    if r <= 0.0:
        return 0.0
    full = 2.0 * (1.0 - math.exp(-r / 2.0)) - (1.0 - math.exp(-r))
    partial = math.sqrt(2.0 * math.pi * r) * (special.ndtr(2.0 * math.sqrt(r)) - special.ndtr(math.sqrt(r))) \
        - (math.exp(-r) - math.exp(-2.0 * r))
    return full + partial


def swapped_two_antenna_cdf(r: float) -> float:
    """
    P(g < r) for two_antenna_config((1, 2)), whose pair coefficients have beta < 0
    """
    if r <= 0.0:
        return 0.0
    return 1.0 - math.exp(-r) - math.sqrt(2.0 * math.pi * r) * math.exp(-9.0 * r / 8.0) * special.erfi(
        math.sqrt(r / 8.0))


def three_antenna_config(noise_power: float = 0.5) -> SystemConfig:
    return SystemConfig(PowerMatrix([1.7, 0.9, 0.4], 'desired'),
                        [PowerMatrix([0.2, 1.1, 0.6], 'interferer')],
                        noise_power)


def write_config_file(directory: str, data: Dict[str, Any], name: str = 'config.json') -> str:
    path = os.path.join(directory, name)
    with open(path, 'w') as config_file:
        json.dump(data, config_file)
    return path


def scenario_file_data(*, varsigma: float = 10.0, alpha_desired: float = 1.0 / 65.0,
                       alpha_interferer: float = 65.0, rho_db: Optional[float] = None,
                       **extra: Any) -> Dict[str, Any]:
    data = {'n_R': 3, 'varsigma': varsigma, 'alpha_desired': alpha_desired,
            'alpha_interferer': alpha_interferer}  # type: Dict[str, Any]
    if rho_db is not None:
        data['rho_db'] = rho_db
    data.update(extra)
    return data


def erlang_q_average(b: float, mean: float, branches: int) -> float:
    """
    E{Q(sqrt(b g))} for g the sum of `branches` exponentials of the same mean
    """
    c = b * mean / 2.0
    mu = math.sqrt(c / (1.0 + c))
    return ((1.0 - mu) / 2.0) ** branches * math.fsum(
        math.comb(branches - 1 + k, k) * ((1.0 + mu) / 2.0) ** k for k in range(branches))


def erlang_q2_average(b: float, mean: float, branches: int) -> float:
    """
    E{Q^2(sqrt(b g))} for the same g, integrated against the Erlang density at 30 digits
    """
    scale = _mp.mpf(mean)

    def integrand(x: Any) -> Any:
        q = _mp.erfc(_mp.sqrt(b * x / 2)) / 2
        return q * q * x ** (branches - 1) * _mp.exp(-x / scale) / (_mp.factorial(branches - 1) * scale ** branches)

    return float(_mp.quad(integrand, [0, scale, 10 * scale, 100 * scale, _mp.inf]))


def confluent_config(noise_power: float = 1.0) -> SystemConfig:
    """
    Desired and interferer powers varying inversely, p_i P_i = 4 on every antenna, so that every
    partial-fraction factor vanishes
    """
    return SystemConfig(PowerMatrix([4.0, 2.0, 1.0], 'desired'),
                        [PowerMatrix([1.0, 2.0, 4.0], 'interferer')],
                        noise_power)
