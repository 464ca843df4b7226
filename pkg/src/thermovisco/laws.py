"""Constitutive framework: free energy, stress split, dissipation and potentials.

A :class:`MaterialModel` supplies a specific free energy ``A(F, theta, xi)``,
a dissipative stress, a flow rule for the internal variables and a heat flux.
The functions in this module derive everything else from those pieces:
entropy, internal energy, thermoelastic and total Piola stress, Cauchy
stress, internal dissipation and the Clausius-Duhem left-hand side.

All evaluators work on batches: ``F`` has shape ``(..., 3, 3)``, ``theta``
broadcasts against ``(...)`` and ``xi`` has shape ``(..., k)``.
"""

from __future__ import annotations

import numpy as np

from . import tensor3 as t3
from .state import ThermoState

EPS_CBRT = np.finfo(float).eps ** (1.0 / 3.0)


def central_difference(fn, x, inner_ndim):
    """Gradient of a batched scalar function by central differences.

    ``fn`` maps an array of shape ``batch + inner`` to values of shape
    ``batch``; ``inner`` is the trailing ``inner_ndim`` axes of ``x``.  Each
    inner entry is perturbed by ``eps**(1/3) * (1 + |x_entry|)`` for the whole
    batch at once.
    """
    x = np.array(x, dtype=float)
    inner = x.shape[x.ndim - inner_ndim:] if inner_ndim else ()
    grad = np.empty_like(x)
    for idx in np.ndindex(*inner):
        sl = (Ellipsis,) + idx
        step = EPS_CBRT * (1.0 + np.abs(x[sl]))
        xp = x.copy()
        xm = x.copy()
        xp[sl] += step
        xm[sl] -= step
        # use the representable step actually taken
        h = xp[sl] - xm[sl]
        grad[sl] = (np.asarray(fn(xp)) - np.asarray(fn(xm))) / h
    return grad


def _xi_of(F, xi):
    if xi is None:
        return np.zeros(np.shape(F)[:-2] + (0,))
    return np.asarray(xi, dtype=float)


class MaterialModel:
    """Base behaviour shared by every material model.

    Subclasses override :meth:`free_energy` and any of the analytic
    derivatives they can provide; the defaults differentiate numerically.
    When ``potential`` is set the dissipative stress and the flow rule are
    derived from it, otherwise they default to zero.
    """

    name = "model"
    n_xi = 0
    n_pi = 0
    density = 1.0
    # 'fluid': full unimodular symmetry group; 'isotropic': rotations only
    symmetry = None
    potential = None
    conductivity = None
    # 'strain_blocks': xi stacks 3x3 internal strains F_i (Maxwell family)
    xi_kind = None

    def dims(self):
        return (self.n_xi, self.n_pi)

    def free_energy(self, F, theta, xi=None):
        return np.zeros(np.shape(F)[:-2])

    def free_energy_dF(self, F, theta, xi=None):
        theta = np.asarray(theta, dtype=float)
        xi = _xi_of(F, xi)
        return central_difference(lambda G: self.free_energy(G, theta, xi), F, 2)

    def free_energy_dtheta(self, F, theta, xi=None):
        xi = _xi_of(F, xi)
        th = np.broadcast_to(np.asarray(theta, dtype=float), np.shape(F)[:-2])
        return central_difference(lambda s: self.free_energy(F, s, xi), th, 0)

    def free_energy_dxi(self, F, theta, xi=None):
        xi = _xi_of(F, xi)
        if xi.shape[-1] == 0:
            return xi.copy()
        return central_difference(lambda z: self.free_energy(F, theta, z), xi, 1)

    def dissipative_stress(self, state):
        if self.potential is not None:
            return stress_from_potential(self.potential, self, state)
        return np.zeros_like(state.F)

    def flow_rule(self, state):
        if self.potential is not None and self.n_xi:
            return flow_from_potential(self.potential, self, state)
        return np.zeros(state.batch_shape + (self.n_xi,))

    def heat_flux(self, state):
        if self.conductivity is None:
            return np.zeros(state.batch_shape + (3,))
        from .heat import fourier_flux

        return fourier_flux(state.F, state.G, self.conductivity)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FunctionModel(MaterialModel):
    """Model assembled from plain callables.

    ``free_energy(F, theta, xi)`` is required; ``dissipative_stress(state)``
    and ``flow_rule(state)`` are optional and default to zero (or to the
    potential, when one is given).
    """

    def __init__(self, free_energy, dissipative_stress=None, flow_rule=None,
                 n_xi=0, n_pi=0, density=1.0, potential=None,
                 conductivity=None, symmetry=None, name="function-model"):
        self._A = free_energy
        self._Td = dissipative_stress
        self._K = flow_rule
        self.n_xi, self.n_pi = n_xi, n_pi
        self.density = density
        self.potential = potential
        self.conductivity = conductivity
        self.symmetry = symmetry
        self.name = name

    def free_energy(self, F, theta, xi=None):
        return np.asarray(self._A(F, theta, _xi_of(F, xi)), dtype=float)

    def dissipative_stress(self, state):
        if self._Td is not None:
            return np.asarray(self._Td(state), dtype=float)
        return super().dissipative_stress(state)

    def flow_rule(self, state):
        if self._K is not None:
            return np.asarray(self._K(state), dtype=float)
        return super().flow_rule(state)


class DissipationPotential:
    """Dissipation potential ``P(F, H, theta, pi, lam)``.

    It should vanish at ``H = 0, lam = 0`` and be convex in ``(H, lam)``.
    ``lam`` is the thermodynamic force ``dA/dxi`` (shape ``(..., k)``).
    The gradients default to central differences.
    """

    name = "potential"

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        raise NotImplementedError

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        return central_difference(lambda X: self.value(F, X, theta, pi, lam), H, 2)

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        lam = _xi_of(F, lam)
        if lam.shape[-1] == 0:
            return lam.copy()
        return central_difference(lambda L: self.value(F, H, theta, pi, L), lam, 1)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FunctionPotential(DissipationPotential):
    """Potential from a callable ``value(F, H, theta, pi, lam)``, gradients numerical."""

    def __init__(self, value, name="function-potential"):
        self._value = value
        self.name = name

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        return np.asarray(self._value(F, H, theta, pi, lam), dtype=float)


# --------------------------------------------------------------------------
# derived quantities
# --------------------------------------------------------------------------


def entropy(model, F, theta, xi=None):
    """Specific entropy ``-dA/dtheta``."""
    t3.check_defgrad(F)
    return -np.asarray(model.free_energy_dtheta(F, theta, xi))


def internal_energy(model, F, theta, xi=None):
    """Specific internal energy ``A + theta * S``."""
    t3.check_defgrad(F)
    return model.free_energy(F, theta, xi) + np.asarray(theta) * entropy(model, F, theta, xi)


def thermoelastic_stress(model, F, theta, xi=None):
    """Reversible part of the first Piola stress, ``density * dA/dF``."""
    t3.check_defgrad(F)
    return model.density * np.asarray(model.free_energy_dF(F, theta, xi))


def thermodynamic_force(model, state):
    """``dA/dxi`` at the state: the argument at which potentials are evaluated."""
    return np.asarray(model.free_energy_dxi(state.F, state.theta, state.xi))


def total_first_piola(model, state):
    """Thermoelastic plus dissipative first Piola stress."""
    return thermoelastic_stress(model, state.F, state.theta, state.xi) + model.dissipative_stress(state)


def cauchy_from_piola(T_R, F):
    """Cauchy stress ``T_R F^T / det F``."""
    F = t3.check_defgrad(F)
    return np.asarray(T_R) @ t3.T(F) / t3.det(F)[..., None, None]


def piola_from_cauchy(sigma, F):
    """First Piola stress ``sigma cof F``."""
    return np.asarray(sigma) @ t3.cofactor(t3.check_defgrad(F))


def internal_dissipation(model, state):
    """``T_Rd : H - density * (dA/dxi) . K``."""
    t3.check_defgrad(state.F)
    D = t3.frob(model.dissipative_stress(state), state.H)
    if model.n_xi:
        lam = thermodynamic_force(model, state)
        D = D - model.density * np.einsum("...i,...i->...", lam, model.flow_rule(state))
    return D


def clausius_duhem_lhs(model, state):
    """``D_int - Q.G / theta``; nonnegative for an admissible model."""
    Q = model.heat_flux(state)
    return internal_dissipation(model, state) - np.einsum("...i,...i->...", Q, state.G) / state.theta


def stress_from_potential(pot, model, state):
    """Dissipative stress ``dP/dH`` evaluated at ``lam = dA/dxi``."""
    t3.check_defgrad(state.F)
    lam = thermodynamic_force(model, state)
    return np.asarray(pot.grad_H(state.F, state.H, state.theta, state.pi, lam))


def flow_from_potential(pot, model, state):
    """Flow rule ``-(1/density) dP/dlam`` evaluated at ``lam = dA/dxi``."""
    t3.check_defgrad(state.F)
    lam = thermodynamic_force(model, state)
    return -np.asarray(pot.grad_lam(state.F, state.H, state.theta, state.pi, lam)) / model.density


def make_state(F, H=None, theta=1.0, G=None, xi=None, pi=None):
    """Shorthand for :class:`ThermoState`."""
    return ThermoState(F=F, H=H, theta=theta, G=G, xi=xi, pi=pi)
