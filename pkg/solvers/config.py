import os
from dataclasses import dataclass, fields

from .errors import ConfigError
from .hurwitz_oracle import DEFAULT_ORACLE_DMAX

OUTPUT_FORMATS = ('table', 'csv', 'json')
ORACLE_BACKENDS = ('direct', 'dp-sieve', 'both')

DEFAULT_CACHE_PATH = 'data/hurwitz_table.json'


@dataclass
class Config:
    """Run configuration for the CLI"""

    lambda_order: int = 20
    gmax: int = 3
    dmax: int = 5
    oracle_backend: str = 'dp-sieve'
    oracle_dmax: int = DEFAULT_ORACLE_DMAX
    output_format: str = 'table'
    cache_path: str = DEFAULT_CACHE_PATH
    verbose: bool = False

    def validate(self) -> 'Config':
        if self.lambda_order < 0:
            raise ConfigError(f"lambda order must be >= 0, got {self.lambda_order}")
        if self.gmax < 0:
            raise ConfigError(f"gmax must be >= 0, got {self.gmax}")
        if self.dmax < 1:
            raise ConfigError(f"dmax must be >= 1, got {self.dmax}")
        if self.oracle_dmax < 1:
            raise ConfigError(f"oracle dmax must be >= 1, got {self.oracle_dmax}")
        if self.oracle_backend not in ORACLE_BACKENDS:
            raise ConfigError(f"unknown oracle backend {self.oracle_backend!r}, expected one of {ORACLE_BACKENDS}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}, expected one of {OUTPUT_FORMATS}")
        return self


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")


def get_config(**overrides) -> Config:
    """
    Build a validated Config

    Only the cache path and the oracle bound come from the environment
    (TODA_CACHE_PATH, TODA_ORACLE_DMAX); everything else is a flag.
    Overrides that are None fall back to environment, then defaults.

    Returns:
        Config: validated configuration
    """
    config = Config(
        cache_path=os.getenv('TODA_CACHE_PATH') or DEFAULT_CACHE_PATH,
        oracle_dmax=_env_int('TODA_ORACLE_DMAX', DEFAULT_ORACLE_DMAX),
    )
    known = {f.name for f in fields(Config)}
    for name, value in overrides.items():
        if name not in known:
            raise ConfigError(f"unknown configuration field {name!r}")
        if value is not None:
            setattr(config, name, value)
    return config.validate()
