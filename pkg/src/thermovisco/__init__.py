"""Finite-strain thermo-visco-elastic constitutive models with internal variables.

Material-point evaluators for the free energy / dissipation framework, a
catalog of models (Maxwell family, Kelvin-Voigt, Newtonian, Reiner-Rivlin,
Oldroyd B, Zaremba-Jaumann), time integration of internal variables along
prescribed motions and randomized checks of frame-indifference, material
symmetry and the dissipation inequality.
"""

from .errors import (
    DetFiCollapse,
    DimensionMismatch,
    InvalidParams,
    InvalidSymmetry,
    NonFinite,
    NonPositiveDeterminant,
    NonPositiveTemperature,
    NotPositiveDefinite,
    ThermoviscoError,
)
from .state import EulerianState, MaterialParams, ThermoState, load_params, solvent_polymer_split, validate

__version__ = "0.1.0"

__all__ = [
    "DetFiCollapse",
    "DimensionMismatch",
    "EulerianState",
    "InvalidParams",
    "InvalidSymmetry",
    "MaterialParams",
    "NonFinite",
    "NonPositiveDeterminant",
    "NonPositiveTemperature",
    "NotPositiveDefinite",
    "ThermoState",
    "ThermoviscoError",
    "load_params",
    "solvent_polymer_split",
    "validate",
]
