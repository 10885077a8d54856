import json
import math
from typing import Any, Dict, List, Optional

from marshmallow import Schema, fields, post_load, validates, validates_schema, ValidationError

from macrodiversity_mrc.analysis.modulation import modulation_by_name
from macrodiversity_mrc.analysis.powermodel import noise_power_for_rho, scenario_to_config
from macrodiversity_mrc.exceptions import InvalidParameterError
from macrodiversity_mrc.models.system_config import (Normalization, PowerMatrix, ScenarioParams, SystemConfig,
                                                     TRACE_CONVENTION_EXPLICIT)

SCENARIO_KEYS = ('varsigma', 'alpha_desired', 'alpha_interferer')


class ScenarioFile:
    """
    Contents of a configuration file: either explicit power matrices or (rho, varsigma, alpha) scenario
    parameters, plus the optional noise override, modulation and perturbation.
    """
    def __init__(self, *,
                 n_r: int,
                 desired: Optional[List[float]] = None,
                 interferers: Optional[List[List[float]]] = None,
                 rho_db: Optional[float] = None,
                 varsigma: Optional[float] = None,
                 alpha_desired: Optional[float] = None,
                 alpha_interferer: Optional[float] = None,
                 trace_norm: Optional[float] = None,
                 antennas_per_location: int = 1,
                 sigma2: Optional[float] = None,
                 modulation: Optional[str] = None,
                 perturb_epsilon_rel: Optional[float] = None) -> None:
        self.n_r = n_r
        self.desired = desired
        self.interferers = interferers or []
        self.rho_db = rho_db
        self.varsigma = varsigma
        self.alpha_desired = alpha_desired
        self.alpha_interferer = alpha_interferer
        self.trace_norm = trace_norm
        self.antennas_per_location = antennas_per_location
        self.sigma2 = sigma2
        self.modulation = modulation
        self.perturb_epsilon_rel = perturb_epsilon_rel

    @property
    def is_scenario(self) -> bool:
        return self.desired is None

    def system_config(self, rho_db: Optional[float] = None) -> SystemConfig:
        """
        Configuration at rho_db when given, otherwise at the file's own sigma2 or rho_db (noiseless when the
        file names neither)
        """
        if self.is_scenario:
            rho = rho_db if rho_db is not None else self.rho_db
            params = ScenarioParams(math.inf if rho is None else rho, self.varsigma, self.alpha_desired,
                                    self.alpha_interferer, n_r=self.n_r, trace_norm=self.trace_norm,
                                    antennas_per_location=self.antennas_per_location)
            config = scenario_to_config(params)
            if rho_db is None and self.sigma2 is not None:
                config = config.with_noise(self.sigma2)
            return config

        desired = PowerMatrix(self.desired or [], 'desired')
        interferers = [PowerMatrix(entries, 'interferer{}'.format(index + 1))
                       for index, entries in enumerate(self.interferers)]
        if rho_db is not None:
            noise = noise_power_for_rho(desired, rho_db)
        elif self.sigma2 is not None:
            noise = self.sigma2
        elif self.rho_db is not None:
            noise = noise_power_for_rho(desired, self.rho_db)
        else:
            noise = 0.0
        normalization = Normalization(trace_convention=TRACE_CONVENTION_EXPLICIT,
                                      rho_db=rho_db if rho_db is not None else self.rho_db)
        return SystemConfig(desired, interferers, noise, normalization)

    def __repr__(self) -> str:
        return 'ScenarioFile(n_r={!r}, desired={!r}, interferers={!r}, rho_db={!r}, varsigma={!r})'.format(
            self.n_r, self.desired, self.interferers, self.rho_db, self.varsigma)


class ScenarioFileSchema(Schema):
    n_r = fields.Int(required=True, data_key='n_R')
    desired = fields.List(fields.Float(allow_nan=False), load_default=None, allow_none=True)
    interferers = fields.List(fields.List(fields.Float(allow_nan=False)), load_default=None, allow_none=True)
    rho_db = fields.Float(load_default=None, allow_none=True)
    varsigma = fields.Float(load_default=None, allow_none=True)
    alpha_desired = fields.Float(load_default=None, allow_none=True)
    alpha_interferer = fields.Float(load_default=None, allow_none=True)
    trace_norm = fields.Float(load_default=None, allow_none=True)
    antennas_per_location = fields.Int(load_default=1)
    sigma2 = fields.Float(load_default=None, allow_none=True, allow_nan=False)
    modulation = fields.Str(load_default=None, allow_none=True)
    perturb_epsilon_rel = fields.Float(load_default=None, allow_none=True)

    @validates('n_r')
    def validate_n_r(self, value: int, **kwargs: Any) -> None:
        if value < 1:
            raise ValidationError('Must be at least 1.')

    @validates('modulation')
    def validate_modulation(self, value: Optional[str], **kwargs: Any) -> None:
        if value is None:
            return
        try:
            modulation_by_name(value)
        except InvalidParameterError as e:
            raise ValidationError(str(e))

    @validates('sigma2')
    def validate_sigma2(self, value: Optional[float], **kwargs: Any) -> None:
        if value is not None and value < 0.0:
            raise ValidationError('Must be nonnegative.')

    @validates('perturb_epsilon_rel')
    def validate_epsilon(self, value: Optional[float], **kwargs: Any) -> None:
        if value is not None and not 0.0 < value < 1e-2:
            raise ValidationError('Must lie in (0, 1e-2).')

    @validates_schema
    def validate_power_source(self, data: Dict, **kwargs: Any) -> None:
        n_r = data.get('n_r')
        desired = data.get('desired')
        errors = {}  # type: Dict[str, List[str]]
        if desired is None:
            for key in SCENARIO_KEYS:
                if data.get(key) is None:
                    errors.setdefault(key, []).append('Required when no desired powers are given.')
            if data.get('interferers'):
                errors.setdefault('interferers', []).append('Give explicit powers for the desired source too.')
        else:
            if n_r is not None and len(desired) != n_r:
                errors.setdefault('desired', []).append('Has {} entries for n_R = {}.'.format(len(desired), n_r))
            for index, entries in enumerate(data.get('interferers') or []):
                if n_r is not None and len(entries) != n_r:
                    errors.setdefault('interferers', []).append(
                        'Interferer {} has {} entries for n_R = {}.'.format(index + 1, len(entries), n_r))
            for key in SCENARIO_KEYS:
                if data.get(key) is not None:
                    errors.setdefault(key, []).append('Not allowed together with explicit powers.')
        if errors:
            raise ValidationError(errors)

    @post_load
    def make_scenario_file(self, data: Dict, **kwargs: Any) -> ScenarioFile:
        return ScenarioFile(**data)


def load_scenario_file(text: str) -> ScenarioFile:
    """
    Parses a JSON configuration document

    :raises json.JSONDecodeError: on malformed JSON, with line and column
    :raises ValidationError: on schema violations, with per-field messages
    :raises InvalidParameterError: when the values are valid individually but not together
    """
    return ScenarioFileSchema().load(json.loads(text))
