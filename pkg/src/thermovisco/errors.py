"""Exception hierarchy shared by every module of the package."""


class ThermoviscoError(ValueError):
    """Base class for all package errors."""


class StateError(ThermoviscoError):
    """A thermodynamic state violates one of its invariants."""


class NonPositiveDeterminant(StateError):
    pass


class NonPositiveTemperature(StateError):
    pass


class DimensionMismatch(StateError):
    pass


class NotPositiveDefinite(ThermoviscoError):
    pass


class InvalidParams(ThermoviscoError):
    pass


class InvalidSymmetry(ThermoviscoError):
    pass


class NonFinite(ThermoviscoError, ArithmeticError):
    """A state entry became NaN or infinite (input or during integration)."""


class DetFiCollapse(NonFinite):
    """det F_i dropped below the admissible threshold during integration."""
