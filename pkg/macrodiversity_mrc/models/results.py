import math
from typing import Any, Dict, List, Optional, Tuple

from marshmallow import Schema, fields, post_load


class SerResult:
    def __init__(self,
                 value: float,
                 breakdown: Optional[Dict[str, float]] = None,
                 profile_weights: Optional[List[Tuple[List[float], float]]] = None,
                 method: str = '',
                 digits: int = 15,
                 perturbation: Optional[Dict[str, float]] = None) -> None:
        self.value = value
        self.breakdown = breakdown or {}
        self.profile_weights = profile_weights or []
        self.method = method
        self.digits = digits
        self.perturbation = perturbation

    def __repr__(self) -> str:
        return 'SerResult(value={!r}, method={!r}, profiles={}, digits={})'.format(
            self.value, self.method, len(self.profile_weights), self.digits)


class SerEstimate:
    """
    Monte Carlo SER with its binomial standard error
    """
    def __init__(self,
                 n_errors: int,
                 n_symbols: int,
                 seed: Optional[int] = None,
                 rng_algorithm: str = 'PCG64',
                 chunk_symbols: Optional[int] = None) -> None:
        self.n_errors = int(n_errors)
        self.n_symbols = int(n_symbols)
        self.seed = seed
        self.rng_algorithm = rng_algorithm
        self.chunk_symbols = chunk_symbols

    @property
    def ser(self) -> float:
        return self.n_errors / self.n_symbols if self.n_symbols else 0.0

    @property
    def std_err(self) -> float:
        if not self.n_symbols:
            return 0.0
        return math.sqrt(self.ser * (1.0 - self.ser) / self.n_symbols)

    def __repr__(self) -> str:
        return 'SerEstimate(ser={!r}, std_err={!r}, n_symbols={!r}, n_errors={!r}, seed={!r})'.format(
            self.ser, self.std_err, self.n_symbols, self.n_errors, self.seed)


class MeanEstimate:
    """
    Sample mean with its standard error
    """
    def __init__(self, mean: float, std_err: float, n_samples: int, seed: Optional[int] = None) -> None:
        self.mean = mean
        self.std_err = std_err
        self.n_samples = n_samples
        self.seed = seed

    def __repr__(self) -> str:
        return 'MeanEstimate(mean={!r}, std_err={!r}, n_samples={!r}, seed={!r})'.format(
            self.mean, self.std_err, self.n_samples, self.seed)


class MetricReport:
    def __init__(self, numerator: float, denominator: float) -> None:
        self.numerator = numerator
        self.denominator = denominator

    @property
    def m_p_linear(self) -> float:
        return self.numerator / self.denominator

    @property
    def m_p_db(self) -> float:
        return 10.0 * math.log10(self.m_p_linear)

    def __repr__(self) -> str:
        return 'MetricReport(m_p_linear={!r}, m_p_db={!r})'.format(self.m_p_linear, self.m_p_db)


class SerResultSchema(Schema):
    value = fields.Float(required=True)
    breakdown = fields.Dict(keys=fields.Str(), values=fields.Float())
    method = fields.Str()
    digits = fields.Int()
    perturbation = fields.Dict(keys=fields.Str(), values=fields.Float(), allow_none=True)


class SerEstimateSchema(Schema):
    ser = fields.Float(dump_only=True)
    std_err = fields.Float(dump_only=True)
    n_errors = fields.Int(required=True)
    n_symbols = fields.Int(required=True)
    seed = fields.Int(allow_none=True)
    rng_algorithm = fields.Str(load_default='PCG64')
    chunk_symbols = fields.Int(allow_none=True)

    @post_load
    def make_ser_estimate(self, data: Dict, **kwargs: Any) -> SerEstimate:
        return SerEstimate(**data)


class MetricReportSchema(Schema):
    m_p_linear = fields.Float(dump_only=True)
    m_p_db = fields.Float(dump_only=True)
    numerator = fields.Float(required=True)
    denominator = fields.Float(required=True)

    @post_load
    def make_metric_report(self, data: Dict, **kwargs: Any) -> MetricReport:
        return MetricReport(**data)
