"""Thermodynamic state containers and material parameters."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import tensor3 as t3
from .errors import (
    DimensionMismatch,
    InvalidParams,
    NonFinite,
    NonPositiveDeterminant,
    NonPositiveTemperature,
)


def _arr(x):
    return np.asarray(x, dtype=float)


@dataclass(frozen=True)
class ThermoState:
    """One material point (or a stack of them, along leading axes).

    ``F`` deformation gradient, ``H`` Lagrangian velocity gradient, ``theta``
    absolute temperature, ``G`` Lagrangian temperature gradient, ``xi``
    internal variables evolved by a flow rule and ``pi`` opaque internal
    variables that are carried but never evolved.
    """

    F: np.ndarray
    H: np.ndarray = None
    theta: np.ndarray = 1.0
    G: np.ndarray = None
    xi: np.ndarray = None
    pi: np.ndarray = None

    def __post_init__(self):
        F = _arr(self.F)
        batch = F.shape[:-2]
        set_ = object.__setattr__
        set_(self, "F", F)
        set_(self, "H", np.zeros_like(F) if self.H is None else _arr(self.H))
        set_(self, "theta", _arr(self.theta))
        set_(self, "G", np.zeros(batch + (3,)) if self.G is None else _arr(self.G))
        set_(self, "xi", np.zeros(batch + (0,)) if self.xi is None else _arr(self.xi))
        set_(self, "pi", np.zeros(batch + (0,)) if self.pi is None else _arr(self.pi))

    @property
    def batch_shape(self):
        return self.F.shape[:-2]

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class EulerianState:
    """Eulerian velocity gradient ``h`` and polymer stress ``xi`` at a point."""

    h: np.ndarray
    xi: np.ndarray
    incompressible: bool = True

    def __post_init__(self):
        h = _arr(self.h)
        if self.incompressible:
            h = t3.dev(h)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "xi", t3.sym(_arr(self.xi)))

    @property
    def d(self):
        return t3.sym(self.h)

    @property
    def w(self):
        return t3.skew(self.h)


def validate(state, model_dims=(0, 0)):
    """Check the invariants of ``state``; return ``None`` or raise a StateError.

    ``model_dims`` is ``(k, m)``: the lengths of ``xi`` and ``pi`` declared by
    the owning model.
    """
    try:
        F = _arr(state.F)
        theta = _arr(state.theta)
        parts = [F, _arr(state.H), theta, _arr(state.G), _arr(state.xi), _arr(state.pi)]
    except (TypeError, ValueError) as exc:
        raise DimensionMismatch(f"state fields are not numeric arrays: {exc}") from None
    if F.shape[-2:] != (3, 3) or _arr(state.H).shape[-2:] != (3, 3):
        raise DimensionMismatch("F and H must be 3x3")
    if _arr(state.G).shape[-1:] != (3,):
        raise DimensionMismatch("G must be a 3-vector")
    for p in parts:
        if not np.all(np.isfinite(p)):
            raise NonFinite("state contains non-finite entries")
    k, m = model_dims
    if _arr(state.xi).shape[-1:] != (k,):
        raise DimensionMismatch(f"xi has length {_arr(state.xi).shape[-1:]}, model expects {k}")
    if _arr(state.pi).shape[-1:] != (m,):
        raise DimensionMismatch(f"pi has length {_arr(state.pi).shape[-1:]}, model expects {m}")
    if np.any(~(t3.det(F) > 0)):
        raise NonPositiveDeterminant("det F must be > 0")
    if np.any(~(theta > 0)):
        raise NonPositiveTemperature("temperature must be > 0")
    return None


def solvent_polymer_split(eta, lambda1, lambda2):
    """Split total viscosity into ``(eta_s, eta_p)`` with ``eta_s = (lambda2/lambda1) eta``."""
    if not (eta > 0 and lambda2 > 0 and lambda1 > lambda2):
        raise InvalidParams(
            f"need eta > 0 and lambda1 > lambda2 > 0, got eta={eta}, "
            f"lambda1={lambda1}, lambda2={lambda2}"
        )
    ratio = lambda2 / lambda1
    eta_s = ratio * eta
    return eta_s, eta - eta_s


_POSITIVE = (
    "density", "mu", "nu", "eta", "lambda1", "lambda2", "conductivity", "omega", "r_gas"
)


@dataclass(frozen=True)
class MaterialParams:
    """Named scalar material parameters.

    ``lam`` is the first Lame parameter of the stored energy; ``lambda1`` and
    ``lambda2`` are the relaxation and retardation times of the complex
    fluids.  ``kappa`` may be zero (frozen internal variables).
    """

    density: float = 1.0
    mu: float = 1.0
    lam: float = 1.0
    nu: float = 1.0
    eta: float = 1.0
    lambda1: float = 10.0
    lambda2: float = 1.0
    kappa: float = 1.0
    conductivity: float = 1.0
    omega: float = 0.75
    r_gas: float = 1.0
    cv: float = 0.0

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not np.isfinite(value):
                raise InvalidParams(f"{f.name} must be finite")
            object.__setattr__(self, f.name, float(value))
        for name in _POSITIVE:
            if not getattr(self, name) > 0:
                raise InvalidParams(f"{name} must be > 0, got {getattr(self, name)}")
        if self.kappa < 0 or self.cv < 0:
            raise InvalidParams("kappa and cv must be >= 0")
        if not 3 * self.lam + 2 * self.mu > 0:
            raise InvalidParams("need 3 lam + 2 mu > 0")

    @property
    def eta_s(self):
        return solvent_polymer_split(self.eta, self.lambda1, self.lambda2)[0]

    @property
    def eta_p(self):
        return solvent_polymer_split(self.eta, self.lambda1, self.lambda2)[1]

    def with_overrides(self, **overrides):
        unknown = set(overrides) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise InvalidParams(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        return dataclasses.replace(self, **overrides)


def parse_params_text(text):
    """Parse ``name = value`` lines (``#`` starts a comment) into a dict of floats."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        name, value = name.strip(), value.strip()
        if not sep or not name or not value:
            raise InvalidParams(f"line {lineno}: expected 'name = value', got {raw!r}")
        try:
            values[name] = float(value)
        except ValueError:
            raise InvalidParams(f"line {lineno}: {value!r} is not a number") from None
    return values


def load_params(path, base=None):
    """Read a parameter file and apply it on top of ``base`` (defaults if None)."""
    values = parse_params_text(Path(path).read_text())
    return (base or MaterialParams()).with_overrides(**values)
