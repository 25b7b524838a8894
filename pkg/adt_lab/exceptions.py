class AdtLabError(Exception):
    """Base class for every error raised by adt_lab."""


class DimensionError(AdtLabError):
    """Vectors of different lengths were combined."""


class DomainError(AdtLabError):
    """An argument lies outside the domain of the operation."""


class NotInvertibleError(AdtLabError):
    """The channel map cannot be inverted (m == n)."""


class DegenerateChannelError(AdtLabError):
    """A direction carries no levels at all."""


class ConfigParseError(AdtLabError):
    """A textual channel configuration could not be parsed."""


class ParameterError(AdtLabError):
    """A scheme parameter is out of range."""


class UnsupportedSchemeError(AdtLabError):
    """No executable construction exists for the request."""


class UnknownSchemeError(AdtLabError):
    """A scheme identifier is not in the catalog."""


class PlanParseError(AdtLabError):
    """A serialized plan could not be read back."""


class SchemeContractError(AdtLabError):
    """A declared signal is not computable from causal knowledge."""


class ContractViolationError(AdtLabError):
    """An encoder touched observations outside its causal prefix."""
