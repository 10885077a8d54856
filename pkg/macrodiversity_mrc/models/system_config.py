import math
from typing import Any, Dict, Optional, Sequence, Tuple

from marshmallow import EXCLUDE, Schema, fields, post_load, validates_schema, ValidationError

from macrodiversity_mrc.exceptions import InvalidParameterError

TRACE_CONVENTION_N_R = 'trace=n_R'
TRACE_CONVENTION_EXPLICIT = 'explicit'


class PowerMatrix:
    """
    Diagonal matrix of average link powers from one source to each receive antenna
    """
    def __init__(self,
                 entries: Sequence[float],
                 source_id: str = '') -> None:
        values = tuple(float(entry) for entry in entries)
        if len(values) < 1:
            raise InvalidParameterError('A power matrix needs at least one antenna')
        for value in values:
            if not math.isfinite(value) or value < 0.0:
                raise InvalidParameterError('Link powers must be finite and nonnegative, got {!r} for {!r}'
                                            .format(value, source_id))
        self.entries = values
        self.source_id = source_id

    @property
    def n_r(self) -> int:
        return len(self.entries)

    @property
    def trace(self) -> float:
        return math.fsum(self.entries)

    def scaled(self, factor: float) -> 'PowerMatrix':
        return PowerMatrix([entry * factor for entry in self.entries], self.source_id)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return 'PowerMatrix({!r}, source_id={!r})'.format(list(self.entries), self.source_id)


class Normalization:
    """
    How a configuration was normalized when it was built from scenario parameters
    """
    def __init__(self,
                 trace_convention: str = TRACE_CONVENTION_EXPLICIT,
                 rho_db: Optional[float] = None,
                 varsigma: Optional[float] = None,
                 epsilon_rel: Optional[float] = None) -> None:
        self.trace_convention = trace_convention
        self.rho_db = rho_db
        self.varsigma = varsigma
        self.epsilon_rel = epsilon_rel

    def __repr__(self) -> str:
        return 'Normalization(trace_convention={!r}, rho_db={!r}, varsigma={!r}, epsilon_rel={!r})'.format(
            self.trace_convention, self.rho_db, self.varsigma, self.epsilon_rel)


class SystemConfig:
    """
    Desired-source and interferer power matrices of one receiver plus the noise power.
    Instances are never mutated; the with_* helpers return new configurations.
    """
    def __init__(self,
                 desired: PowerMatrix,
                 interferers: Sequence[PowerMatrix] = (),
                 noise_power: float = 0.0,
                 normalization: Optional[Normalization] = None) -> None:
        self.desired = desired
        self.interferers = tuple(interferers)
        self.noise_power = float(noise_power)
        self.normalization = normalization or Normalization()

        if not math.isfinite(self.noise_power) or self.noise_power < 0.0:
            raise InvalidParameterError('Noise power must be finite and nonnegative, got {!r}'.format(noise_power))
        if any(entry <= 0.0 for entry in desired.entries):
            raise InvalidParameterError('Desired link powers must be positive, got {!r}'.format(desired.entries))
        for interferer in self.interferers:
            if interferer.n_r != desired.n_r:
                raise InvalidParameterError('Interferer {!r} has {} antennas, the desired source has {}'
                                            .format(interferer.source_id, interferer.n_r, desired.n_r))

    @property
    def n_r(self) -> int:
        return self.desired.n_r

    @property
    def desired_powers(self) -> Tuple[float, ...]:
        return self.desired.entries

    def with_noise(self, noise_power: float) -> 'SystemConfig':
        return SystemConfig(self.desired, self.interferers, noise_power, self.normalization)

    def with_desired(self, desired: PowerMatrix, normalization: Optional[Normalization] = None) -> 'SystemConfig':
        return SystemConfig(desired, self.interferers, self.noise_power, normalization or self.normalization)

    def scaled(self, factor: float) -> 'SystemConfig':
        """
        Multiplies every power matrix and the noise power by factor
        """
        return SystemConfig(self.desired.scaled(factor),
                            [interferer.scaled(factor) for interferer in self.interferers],
                            self.noise_power * factor,
                            self.normalization)

    def __repr__(self) -> str:
        return 'SystemConfig(desired={!r}, interferers={!r}, noise_power={!r})'.format(
            self.desired, list(self.interferers), self.noise_power)


class ScenarioParams:
    """
    (rho, varsigma, alpha) parameterization of a three-location receiver with a single interferer
    """
    def __init__(self,
                 rho_db: float,
                 varsigma: float,
                 alpha_desired: float,
                 alpha_interferer: float,
                 n_r: int = 3,
                 trace_norm: Optional[float] = None,
                 antennas_per_location: int = 1) -> None:
        if varsigma <= 0.0 or not math.isfinite(varsigma):
            raise InvalidParameterError('varsigma must be positive, got {!r}'.format(varsigma))
        if alpha_desired <= 0.0 or alpha_interferer <= 0.0:
            raise InvalidParameterError('Decay parameters must be positive, got {!r} and {!r}'
                                        .format(alpha_desired, alpha_interferer))
        if n_r < 1 or antennas_per_location < 1 or n_r % antennas_per_location:
            raise InvalidParameterError('{} antennas cannot be split into locations of {}'
                                        .format(n_r, antennas_per_location))
        self.rho_db = float(rho_db)
        self.varsigma = float(varsigma)
        self.alpha_desired = float(alpha_desired)
        self.alpha_interferer = float(alpha_interferer)
        self.n_r = int(n_r)
        self.trace_norm = float(n_r) if trace_norm is None else float(trace_norm)
        self.antennas_per_location = int(antennas_per_location)
        if self.trace_norm <= 0.0:
            raise InvalidParameterError('trace_norm must be positive, got {!r}'.format(trace_norm))

    @property
    def n_locations(self) -> int:
        return self.n_r // self.antennas_per_location

    def with_rho(self, rho_db: float) -> 'ScenarioParams':
        return ScenarioParams(rho_db, self.varsigma, self.alpha_desired, self.alpha_interferer, self.n_r,
                              self.trace_norm, self.antennas_per_location)

    def __repr__(self) -> str:
        return 'ScenarioParams(rho_db={!r}, varsigma={!r}, alpha_desired={!r}, alpha_interferer={!r}, n_r={!r}, ' \
               'trace_norm={!r}, antennas_per_location={!r})'.format(self.rho_db, self.varsigma, self.alpha_desired,
                                                                     self.alpha_interferer, self.n_r,
                                                                     self.trace_norm, self.antennas_per_location)


class PowerMatrixSchema(Schema):
    entries = fields.List(fields.Float(allow_nan=False), required=True)
    source_id = fields.Str(load_default='')

    @post_load
    def make_power_matrix(self, data: Dict, **kwargs: Any) -> PowerMatrix:
        return PowerMatrix(**data)


class NormalizationSchema(Schema):
    trace_convention = fields.Str(load_default=TRACE_CONVENTION_EXPLICIT)
    rho_db = fields.Float(allow_none=True, load_default=None)
    varsigma = fields.Float(allow_none=True, load_default=None)
    epsilon_rel = fields.Float(allow_none=True, load_default=None)

    @post_load
    def make_normalization(self, data: Dict, **kwargs: Any) -> Normalization:
        return Normalization(**data)


class SystemConfigSchema(Schema):
    class Meta:
        # dumped configurations carry the derived n_r
        unknown = EXCLUDE

    n_r = fields.Int(dump_only=True)
    desired = fields.Nested(PowerMatrixSchema, required=True)
    interferers = fields.List(fields.Nested(PowerMatrixSchema), load_default=list)
    noise_power = fields.Float(load_default=0.0)
    normalization = fields.Nested(NormalizationSchema, load_default=None, allow_none=True)

    @validates_schema
    def validate_antenna_counts(self, data: Dict, **kwargs: Any) -> None:
        desired = data.get('desired')
        for interferer in data.get('interferers') or []:
            if desired is not None and interferer.n_r != desired.n_r:
                raise ValidationError('All power matrices must share the same number of antennas',
                                      field_name='interferers')

    @post_load
    def make_system_config(self, data: Dict, **kwargs: Any) -> SystemConfig:
        return SystemConfig(**data)


class ScenarioParamsSchema(Schema):
    rho_db = fields.Float(required=True)
    varsigma = fields.Float(required=True)
    alpha_desired = fields.Float(required=True)
    alpha_interferer = fields.Float(required=True)
    n_r = fields.Int(load_default=3)
    trace_norm = fields.Float(allow_none=True, load_default=None)
    antennas_per_location = fields.Int(load_default=1)

    @post_load
    def make_scenario_params(self, data: Dict, **kwargs: Any) -> ScenarioParams:
        return ScenarioParams(**data)


def dump_system_config(config: SystemConfig) -> Dict[str, Any]:
    return SystemConfigSchema().dump(config)


def load_system_config(data: Dict[str, Any]) -> SystemConfig:
    return SystemConfigSchema().load(data)
