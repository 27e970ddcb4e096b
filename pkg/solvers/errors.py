"""
Exception hierarchy for the Toda solvers
"""


class TodaError(Exception):
    """Base class for every error raised by the solvers package"""


class SeriesPreconditionError(TodaError, ValueError):
    """A series operation was asked for something outside its domain"""


class OracleBoundError(TodaError, RuntimeError):
    """The Hurwitz oracle refused a degree above its resource bound"""


class CacheSchemaError(TodaError, ValueError):
    """A Hurwitz table document could not be read as a supported schema"""


class ConfigError(TodaError, ValueError):
    """Invalid CLI or environment configuration"""
