"""Exception hierarchy shared by all hybridsim modules."""


class HybridSimError(Exception):
    """Base class for every error raised by hybridsim."""


class DomainError(HybridSimError, ValueError):
    """An input lies outside the domain of a formula."""


class DimensionError(HybridSimError, TypeError):
    """Arithmetic or assignment between incompatible units."""


class ParseError(HybridSimError, ValueError):
    """Malformed quantity text.  ``position`` is the 0-based offending index."""

    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} (at position {position} in {text!r})")
        self.text = text
        self.position = position


class NotFoundError(HybridSimError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ConfigError(HybridSimError):
    """Bad run configuration: syntax, unknown keys, or unit mismatch."""


class SimulationError(HybridSimError, RuntimeError):
    """Time integration aborted (truncation guard, NaN, step-size rule)."""
