"""Concrete material models.

Thermo-elastic solids and gases, kinematically viscous fluids (Newtonian,
Reiner-Rivlin), Kelvin-Voigt, the nonlinear 3d Maxwell family with the
internal strain ``F_i`` as internal variable, the Eulerian complex fluids
(Oldroyd B, Zaremba-Jaumann, custom objective derivative), 0d rheological
prototypes, dissipation potentials and the counterexamples that anchor the
verification checks.  :func:`build_model` exposes a catalog by name.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import tensor3 as t3
from .errors import InvalidParams
from .laws import DissipationPotential, MaterialModel, central_difference
from .state import MaterialParams, solvent_polymer_split

# --------------------------------------------------------------------------
# stored energies
# --------------------------------------------------------------------------


class StoredEnergy:
    """Elastic stored energy ``W(F)``; ``grad`` defaults to central differences."""

    isotropic = False
    name = "W"

    def value(self, F):
        raise NotImplementedError

    def grad(self, F):
        return central_difference(self.value, F, 2)

    def __call__(self, F):
        return self.value(F)


class StVenantKirchhoff(StoredEnergy):
    """``(lam/2)(tr E)^2 + mu tr(E^2)`` with Green-Lagrange strain ``E = (F^T F - I)/2``."""

    isotropic = True

    def __init__(self, lam, mu):
        if not (mu > 0 and 3 * lam + 2 * mu > 0):
            raise InvalidParams(f"need mu > 0 and 3 lam + 2 mu > 0, got lam={lam}, mu={mu}")
        self.lam, self.mu = float(lam), float(mu)
        self.name = f"svk(lam={self.lam:g}, mu={self.mu:g})"

    def _strain(self, F):
        F = np.asarray(F, dtype=float)
        return 0.5 * (t3.T(F) @ F - np.eye(3))

    def value(self, F):
        E = self._strain(F)
        trE = t3.trace(E)
        return 0.5 * self.lam * trE**2 + self.mu * t3.frob(E, E)

    def grad(self, F):
        # dW/dF = F S with the second Piola stress S = lam tr(E) I + 2 mu E
        E = self._strain(F)
        S = self.lam * t3.trace(E)[..., None, None] * np.eye(3) + 2.0 * self.mu * E
        return np.asarray(F, dtype=float) @ S


def stvenant_kirchhoff(lam, mu):
    return StVenantKirchhoff(lam, mu)


class VolumetricEnergy(StoredEnergy):
    """Elastic-fluid energy ``(c/2)(J - 1)^2``, a function of ``det F`` only."""

    def __init__(self, c=1.0):
        self.c = float(c)
        self.name = f"volumetric(c={self.c:g})"

    def value(self, F):
        return 0.5 * self.c * (t3.det(F) - 1.0) ** 2

    def grad(self, F):
        return self.c * (t3.det(F) - 1.0)[..., None, None] * t3.cofactor(F)


# --------------------------------------------------------------------------
# dissipation potentials
# --------------------------------------------------------------------------


def _blocks(v):
    v = np.asarray(v, dtype=float)
    return v.reshape(v.shape[:-1] + (v.shape[-1] // 9, 3, 3))


def _flat(M):
    return M.reshape(M.shape[:-3] + (M.shape[-3] * 9,))


def _zero_like_lam(F, lam):
    if lam is None:
        return np.zeros(np.shape(F)[:-2] + (0,))
    return np.zeros_like(np.asarray(lam, dtype=float))


class QuadraticForcePotential(DissipationPotential):
    """``(kappa/2)|lam|^2``; yields the flow rule ``K = -(kappa/P) lam``."""

    def __init__(self, kappa):
        self.kappa = float(kappa)
        self.name = "quadratic-force"

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        lam = np.asarray(lam, dtype=float)
        return 0.5 * self.kappa * np.einsum("...i,...i->...", lam, lam)

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        return np.zeros_like(np.asarray(H, dtype=float))

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        return self.kappa * np.asarray(lam, dtype=float)


class FluidForcePotential(DissipationPotential):
    """``(kappa/2) sum_k |lam_k F^T|^2`` over the 3x3 blocks of ``lam``."""

    def __init__(self, kappa):
        self.kappa = float(kappa)
        self.name = "fluid-force"

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        L = _blocks(lam) @ t3.T(np.asarray(F))[..., None, :, :]
        return 0.5 * self.kappa * np.sum(t3.frob(L, L), axis=-1)

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        return np.zeros_like(np.asarray(H, dtype=float))

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        F = np.asarray(F, dtype=float)
        C = (t3.T(F) @ F)[..., None, :, :]
        return self.kappa * _flat(_blocks(lam) @ C)


class KelvinVoigtPotential(DissipationPotential):
    """``(nu/2)|Sym(H F^{-1})|^2``."""

    def __init__(self, nu):
        self.nu = float(nu)
        self.name = "kelvin-voigt"

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        d = t3.sym(np.asarray(H) @ t3.inv(F))
        return 0.5 * self.nu * t3.frob(d, d)

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        return self.nu * t3.sym(np.asarray(H) @ t3.inv(F)) @ t3.inv_T(F)

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        return _zero_like_lam(F, lam)


class NewtonianPotential(DissipationPotential):
    """``nu det(F) |Sym(H F^{-1})|^2``; its H-gradient is the Newtonian viscous stress."""

    def __init__(self, nu):
        self.nu = float(nu)
        self.name = "newtonian"

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        d = t3.sym(np.asarray(H) @ t3.inv(F))
        return self.nu * t3.det(F) * t3.frob(d, d)

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        d = t3.sym(np.asarray(H) @ t3.inv(F))
        return 2.0 * self.nu * t3.det(F)[..., None, None] * d @ t3.inv_T(F)

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        return _zero_like_lam(F, lam)


def _cofactor_rate(F, H):
    Ci = t3.inv(t3.T(F) @ F)
    FiT = t3.inv_T(F)
    return H @ Ci + FiT @ t3.T(H) @ FiT


class CofactorRatePotential(DissipationPotential):
    """``(nu det(F)/2)|H C^{-1} + F^{-T} H^T F^{-T}|^2``.

    Nonnegative and convex in ``H``; the map inside the norm is self-adjoint,
    so the gradient is that map applied twice.  At ``F = I`` the gradient is
    ``4 nu Sym(H)``, twice the Newtonian viscous stress.
    """

    def __init__(self, nu):
        self.nu = float(nu)
        self.name = "cofactor-rate"

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        M = _cofactor_rate(F, np.asarray(H, dtype=float))
        return 0.5 * self.nu * t3.det(F) * t3.frob(M, M)

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        M = _cofactor_rate(F, np.asarray(H, dtype=float))
        return self.nu * t3.det(F)[..., None, None] * _cofactor_rate(F, M)

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        return _zero_like_lam(F, lam)


class ConcavePotential(DissipationPotential):
    """``-|H|^2``: not a valid potential, used to exercise the convexity probe."""

    name = "concave"

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        return -t3.frob(H, H)

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        return -2.0 * np.asarray(H, dtype=float)

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        return _zero_like_lam(F, lam)


DEFAULT_W0 = t3.skew_from_vector(np.array([0.3, -0.5, 0.7]))


class SkewPotential(DissipationPotential):
    """``(F W0):H`` with ``W0`` skew: linear in ``H``, so its stress ``F W0`` is not symmetric."""

    name = "skew"

    def __init__(self, W0=DEFAULT_W0):
        self.W0 = np.asarray(W0, dtype=float)

    def value(self, F, H, theta=1.0, pi=None, lam=None):
        return t3.frob(np.asarray(F) @ self.W0, H)

    def grad_H(self, F, H, theta=1.0, pi=None, lam=None):
        return np.broadcast_to(np.asarray(F) @ self.W0, np.shape(H)).copy()

    def grad_lam(self, F, H, theta=1.0, pi=None, lam=None):
        return _zero_like_lam(F, lam)


# --------------------------------------------------------------------------
# models without internal variables
# --------------------------------------------------------------------------


def _batch_zeros(F):
    return np.zeros(np.shape(F)[:-2])


class ElasticModel(MaterialModel):
    """Hyperelastic solid ``A = W(F)/P``: no dissipation."""

    def __init__(self, W, density=1.0, conductivity=None, name="elastic"):
        self.W = W
        self.density = float(density)
        self.conductivity = conductivity
        self.symmetry = "isotropic" if W.isotropic else None
        self.name = name

    def free_energy(self, F, theta, xi=None):
        return self.W.value(F) / self.density

    def free_energy_dF(self, F, theta, xi=None):
        return self.W.grad(F) / self.density

    def free_energy_dtheta(self, F, theta, xi=None):
        return _batch_zeros(F)


class PerfectGas(MaterialModel):
    """``A = -r theta ln J - cv theta ln theta``; Cauchy stress is the pressure ``-(P r theta/J) I``."""

    symmetry = "fluid"

    def __init__(self, r=1.0, cv=0.0, density=1.0, conductivity=None):
        if not r > 0:
            raise InvalidParams("gas constant must be > 0")
        self.r, self.cv = float(r), float(cv)
        self.density = float(density)
        self.conductivity = conductivity
        self.name = "perfect-gas"

    def free_energy(self, F, theta, xi=None):
        theta = np.asarray(theta, dtype=float)
        return -self.r * theta * np.log(t3.det(F)) - self.cv * theta * np.log(theta)

    def free_energy_dF(self, F, theta, xi=None):
        theta = np.asarray(theta, dtype=float)
        return -self.r * theta[..., None, None] * t3.inv_T(F)

    def free_energy_dtheta(self, F, theta, xi=None):
        theta = np.asarray(theta, dtype=float)
        return -self.r * np.log(t3.det(F)) - self.cv * (np.log(theta) + 1.0)


def perfect_gas(r=1.0, cv=0.0, density=1.0):
    return PerfectGas(r, cv, density)


class Newtonian(MaterialModel):
    """Compressible Newtonian fluid: ``T_Rd = nu J (H C^{-1} + F^{-T} H^T F^{-T})``."""

    symmetry = "fluid"

    def __init__(self, nu, density=1.0, conductivity=None):
        if not nu > 0:
            raise InvalidParams("viscosity must be > 0")
        self.nu = float(nu)
        self.density = float(density)
        self.conductivity = conductivity
        self.name = "newtonian"

    def free_energy_dF(self, F, theta, xi=None):
        return np.zeros_like(np.asarray(F, dtype=float))

    def free_energy_dtheta(self, F, theta, xi=None):
        return _batch_zeros(F)

    def dissipative_stress(self, state):
        F, H = state.F, state.H
        return self.nu * t3.det(F)[..., None, None] * _cofactor_rate(F, H)


def _d_invariants(d):
    return t3.principal_invariants(d)


class ReinerRivlin(MaterialModel):
    """Eulerian law ``sigma = b0 I + b1 d + b2 d^2``, coefficients of ``(rho, iota(d), theta)``.

    As a Lagrangian model the dissipative stress is ``sigma(P/J, Sym(H F^{-1}), theta) cof F``.
    """

    symmetry = "fluid"

    def __init__(self, b0, b1, b2, density=1.0, conductivity=None, name="reiner-rivlin"):
        self.b0, self.b1, self.b2 = b0, b1, b2
        self.density = float(density)
        self.conductivity = conductivity
        self.name = name

    def cauchy_stress(self, rho, d, theta):
        d = np.asarray(d, dtype=float)
        inv = _d_invariants(d)
        c0 = np.asarray(self.b0(rho, inv, theta), dtype=float)[..., None, None]
        c1 = np.asarray(self.b1(rho, inv, theta), dtype=float)[..., None, None]
        c2 = np.asarray(self.b2(rho, inv, theta), dtype=float)[..., None, None]
        return c0 * np.eye(3) + c1 * d + c2 * (d @ d)

    def free_energy_dF(self, F, theta, xi=None):
        return np.zeros_like(np.asarray(F, dtype=float))

    def free_energy_dtheta(self, F, theta, xi=None):
        return _batch_zeros(F)

    def dissipative_stress(self, state):
        F = state.F
        d = t3.sym(state.H @ t3.inv(F))
        sigma = self.cauchy_stress(self.density / t3.det(F), d, state.theta)
        return sigma @ t3.cofactor(F)


def _const(c):
    return lambda rho, inv, theta: np.full(np.shape(inv[0]), float(c))


def reiner_rivlin(b0, b1, b2, density=1.0):
    """Reiner-Rivlin fluid; numbers are accepted as constant coefficients."""
    wrap = lambda b: b if callable(b) else _const(b)
    return ReinerRivlin(wrap(b0), wrap(b1), wrap(b2), density)


def shear_thickening_reiner_rivlin(nu, density=1.0, conductivity=None):
    """``b1 = 2 nu (1 + |d|^2)``, ``b2 = nu/2``; admissible since ``b1 |d|^2 + b2 tr d^3 > 0``."""

    def b1(rho, inv, theta):
        return 2.0 * nu * (1.0 + inv[0] ** 2 - 2.0 * inv[1])

    return ReinerRivlin(_const(0.0), b1, _const(0.5 * nu), density, conductivity)


class KelvinVoigt3d(MaterialModel):
    """``A = W(F)/P`` with viscous stress ``nu Sym(H F^{-1}) F^{-T}``."""

    def __init__(self, W, nu, density=1.0, conductivity=None):
        if not nu > 0:
            raise InvalidParams("viscosity must be > 0")
        self.W, self.nu = W, float(nu)
        self.density = float(density)
        self.conductivity = conductivity
        self.symmetry = "isotropic" if W.isotropic else None
        self.name = "kelvin-voigt3d"

    def free_energy(self, F, theta, xi=None):
        return self.W.value(F) / self.density

    def free_energy_dF(self, F, theta, xi=None):
        return self.W.grad(F) / self.density

    def free_energy_dtheta(self, F, theta, xi=None):
        return _batch_zeros(F)

    def dissipative_stress(self, state):
        return self.nu * t3.sym(state.H @ t3.inv(state.F)) @ t3.inv_T(state.F)


def kelvin_voigt3d(W, nu, density=1.0):
    return KelvinVoigt3d(W, nu, density)


class PotentialModel(MaterialModel):
    """Model whose dissipative stress and flow rule come from a potential."""

    def __init__(self, potential, W=None, density=1.0, symmetry=None, name="potential-model"):
        self.potential = potential
        self.W = W
        self.density = float(density)
        self.symmetry = symmetry
        self.name = name

    def free_energy(self, F, theta, xi=None):
        if self.W is None:
            return _batch_zeros(F)
        return self.W.value(F) / self.density

    def free_energy_dF(self, F, theta, xi=None):
        if self.W is None:
            return np.zeros_like(np.asarray(F, dtype=float))
        return self.W.grad(F) / self.density

    def free_energy_dtheta(self, F, theta, xi=None):
        return _batch_zeros(F)


class StressCounterexample(MaterialModel):
    """Purely viscous model with an arbitrary dissipative stress ``fn(F, H)``."""

    def __init__(self, fn, name):
        self.fn = fn
        self.name = name

    def free_energy_dF(self, F, theta, xi=None):
        return np.zeros_like(np.asarray(F, dtype=float))

    def free_energy_dtheta(self, F, theta, xi=None):
        return _batch_zeros(F)

    def dissipative_stress(self, state):
        return np.asarray(self.fn(state.F, state.H), dtype=float)


def counterexample_h():
    """``T_Rd = H``: depends on the spin of the motion, so not frame-indifferent."""
    return StressCounterexample(lambda F, H: np.array(H, dtype=float), "counterexample-h")


def counterexample_skew(W0=DEFAULT_W0):
    """``T_Rd = F W0`` with ``W0`` skew: frame-indifferent but with skew Cauchy stress."""
    W0 = np.asarray(W0, dtype=float)
    return StressCounterexample(lambda F, H: np.asarray(F) @ W0, "counterexample-skew")


# --------------------------------------------------------------------------
# Maxwell family
# --------------------------------------------------------------------------


class GeneralizedMaxwell3d(MaterialModel):
    """``A = (W0(F) + sum_k W_k(F F_{i,k}^{-1})) / P`` with decoupled flow rules.

    The internal variables are the ``n`` internal strains ``F_{i,k}``
    flattened row-major into ``xi`` (length ``9n``).  ``variant='solid'``
    uses ``K_k = -(kappa_k/P) lam_k``; ``variant='fluid'`` right-multiplies
    by ``F^T F``, which makes the material fluid.
    """

    xi_kind = "strain_blocks"

    def __init__(self, Ws, kappa, variant="solid", W0=None, density=1.0,
                 conductivity=None, name=None):
        Ws = list(Ws)
        if not Ws:
            raise InvalidParams("need at least one Maxwell branch")
        kappas = np.broadcast_to(np.asarray(kappa, dtype=float), (len(Ws),)).copy()
        if np.any(kappas < 0):
            raise InvalidParams("kappa must be >= 0")
        if variant not in ("solid", "fluid"):
            raise InvalidParams(f"variant must be 'solid' or 'fluid', got {variant!r}")
        self.Ws, self.kappas, self.variant, self.W0 = Ws, kappas, variant, W0
        self.n_xi = 9 * len(Ws)
        self.density = float(density)
        self.conductivity = conductivity
        iso = all(W.isotropic for W in Ws) and (W0 is None or W0.isotropic)
        if variant == "fluid" and W0 is None:
            self.symmetry = "fluid"
        else:
            self.symmetry = "isotropic" if iso else None
        pot = QuadraticForcePotential if variant == "solid" else FluidForcePotential
        # flow rule as a potential (all branches share kappa when this is used)
        self.potential = pot(kappas[0]) if np.all(kappas == kappas[0]) else None
        self.name = name or f"maxwell3d-{variant}"

    def _split(self, F, xi):
        F = np.asarray(F, dtype=float)
        Fi = _blocks(xi)
        Fi_inv = t3.inv(Fi)
        Fe = F[..., None, :, :] @ Fi_inv
        return F, Fi_inv, Fe

    def _branch_grads(self, Fe):
        return np.stack([W.grad(Fe[..., k, :, :]) for k, W in enumerate(self.Ws)], axis=-3)

    def free_energy(self, F, theta, xi=None):
        F, _, Fe = self._split(F, xi)
        A = sum(W.value(Fe[..., k, :, :]) for k, W in enumerate(self.Ws))
        if self.W0 is not None:
            A = A + self.W0.value(F)
        return A / self.density

    def free_energy_dF(self, F, theta, xi=None):
        F, Fi_inv, Fe = self._split(F, xi)
        T = np.sum(self._branch_grads(Fe) @ t3.T(Fi_inv), axis=-3)
        if self.W0 is not None:
            T = T + self.W0.grad(F)
        return T / self.density

    def free_energy_dtheta(self, F, theta, xi=None):
        return _batch_zeros(F)

    def free_energy_dxi(self, F, theta, xi=None):
        F, Fi_inv, Fe = self._split(F, xi)
        FiT = t3.T(Fi_inv)
        lam = -(FiT @ t3.T(F)[..., None, :, :] @ self._branch_grads(Fe) @ FiT)
        return _flat(lam) / self.density

    def dissipative_stress(self, state):
        return np.zeros_like(state.F)

    def flow_rule(self, state):
        F, Fi_inv, Fe = self._split(state.F, state.xi)
        FiT = t3.T(Fi_inv)
        kap = self.kappas[:, None, None] / self.density**2
        K = kap * (FiT @ t3.T(F)[..., None, :, :] @ self._branch_grads(Fe) @ FiT)
        if self.variant == "fluid":
            K = K @ (t3.T(F) @ F)[..., None, :, :]
        return _flat(K)


def maxwell3d(W, kappa, variant="solid", density=1.0):
    return GeneralizedMaxwell3d([W], kappa, variant, density=density,
                                name=f"maxwell3d-{variant}")


def generalized_maxwell3d(Ws, kappa, W0=None, variant="solid", density=1.0):
    return GeneralizedMaxwell3d(Ws, kappa, variant, W0=W0, density=density,
                                name=f"generalized-maxwell3d-{variant}")


def identity_internal_strains(n, batch_shape=()):
    """``xi`` holding ``n`` identity internal strains."""
    return np.broadcast_to(np.tile(np.eye(3).ravel(), n), tuple(batch_shape) + (9 * n,)).copy()


class BrokenFlowModel(GeneralizedMaxwell3d):
    """Maxwell energy with flow rule ``K = F``, which is not frame-indifferent."""

    def __init__(self, W):
        super().__init__([W], 1.0, "solid", name="counterexample-flow")
        self.potential = None
        self.symmetry = None

    def flow_rule(self, state):
        return np.asarray(state.F, dtype=float).reshape(state.batch_shape + (9,))


# --------------------------------------------------------------------------
# complex fluids
# --------------------------------------------------------------------------


def upper_convected_ob(xi, h):
    """``-(h xi + xi h^T)``: Oldroyd B."""
    return -(h @ xi + xi @ t3.T(h))


def corotational_ob(xi, h):
    """``xi w - w xi`` with the spin ``w = (h - h^T)/2``: Zaremba-Jaumann."""
    w = t3.skew(h)
    return xi @ w - w @ xi


_OBJECTIVE = {"oldroyd_b": upper_convected_ob, "zaremba_jaumann": corotational_ob}


def zj_free_energy(xi, lambda1, eta_p):
    """``(lambda1/(4 eta_p)) |xi|^2``."""
    if not (lambda1 > 0 and eta_p > 0):
        raise InvalidParams("lambda1 and eta_p must be > 0")
    xi = np.asarray(xi, dtype=float)
    return lambda1 / (4.0 * eta_p) * t3.frob(xi, xi)


def zj_free_energy_grad(xi, lambda1, eta_p):
    """``d/dxi`` of :func:`zj_free_energy`, i.e. ``(lambda1/(2 eta_p)) xi``."""
    return lambda1 / (2.0 * eta_p) * np.asarray(xi, dtype=float)


class ComplexFluidModel:
    """Incompressible complex fluid with polymer stress ``xi`` as internal variable.

    Total (extra) stress ``sigma = 2 eta_s d + xi``; polymer rate
    ``xi' = -Ob(xi, h) + (2 eta_p d - xi)/lambda1``.  ``h`` is projected onto
    trace-free matrices, which drops the indeterminate pressure from
    ``sigma : d``.
    """

    n_xi = 9

    def __init__(self, kind, eta_s, eta_p, lambda1, free_energy_kind="none", ob=None):
        if not (eta_s > 0 and eta_p > 0 and lambda1 > 0):
            raise InvalidParams("eta_s, eta_p and lambda1 must be > 0")
        if kind == "custom":
            if ob is None:
                raise InvalidParams("custom kind needs an Ob(xi, h) function")
            self.ob = ob
        elif kind in _OBJECTIVE:
            self.ob = _OBJECTIVE[kind]
        else:
            raise InvalidParams(f"unknown objective derivative {kind!r}")
        if free_energy_kind not in ("none", "zj_quadratic"):
            raise InvalidParams(f"unknown free energy {free_energy_kind!r}")
        self.kind = kind
        self.eta_s, self.eta_p, self.lambda1 = float(eta_s), float(eta_p), float(lambda1)
        self.free_energy_kind = free_energy_kind
        self.name = kind.replace("_", "-")

    @classmethod
    def from_split(cls, kind, eta, lambda1, lambda2, **kw):
        eta_s, eta_p = solvent_polymer_split(eta, lambda1, lambda2)
        return cls(kind, eta_s, eta_p, lambda1, **kw)

    def with_free_energy(self, free_energy_kind):
        return ComplexFluidModel(self.kind, self.eta_s, self.eta_p, self.lambda1,
                                 free_energy_kind, self.ob)

    def flow_rule(self, h, xi):
        h = t3.dev(np.asarray(h, dtype=float))
        xi = np.asarray(xi, dtype=float)
        return -self.ob(xi, h) + (2.0 * self.eta_p * t3.sym(h) - xi) / self.lambda1

    def stress(self, h, xi):
        return 2.0 * self.eta_s * t3.sym(t3.dev(np.asarray(h, dtype=float))) + np.asarray(xi)

    def raw_dissipation(self, h, xi):
        """``sigma : d``."""
        d = t3.sym(t3.dev(np.asarray(h, dtype=float)))
        return t3.frob(self.stress(h, xi), d)

    def free_energy(self, xi):
        if self.free_energy_kind == "none":
            return np.zeros(np.shape(xi)[:-2])
        return zj_free_energy(xi, self.lambda1, self.eta_p)

    def free_energy_grad(self, xi):
        if self.free_energy_kind == "none":
            return np.zeros_like(np.asarray(xi, dtype=float))
        return zj_free_energy_grad(xi, self.lambda1, self.eta_p)

    def augmented_dissipation(self, h, xi):
        """``sigma : d - (da/dxi) : k``, the internal dissipation with the free-energy term."""
        D = self.raw_dissipation(h, xi)
        if self.free_energy_kind == "none":
            return D
        return D - t3.frob(self.free_energy_grad(xi), self.flow_rule(h, xi))

    def zj_dissipation_identity(self, h, xi):
        """``2 eta_s |d|^2 + |xi|^2/(2 eta_p)``."""
        d = t3.sym(t3.dev(np.asarray(h, dtype=float)))
        xi = np.asarray(xi, dtype=float)
        return 2.0 * self.eta_s * t3.frob(d, d) + t3.frob(xi, xi) / (2.0 * self.eta_p)

    def __repr__(self):
        return f"<ComplexFluidModel {self.kind} free_energy={self.free_energy_kind}>"


def complex_fluid(kind, eta_s, eta_p, lambda1, free_energy_kind="none", ob=None):
    return ComplexFluidModel(kind, eta_s, eta_p, lambda1, free_energy_kind, ob)


# --------------------------------------------------------------------------
# 0d rheological prototypes
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroDModel:
    """Scalar spring/dashpot networks.

    ``maxwell``: spring ``mu`` in series with dashpot ``nu``; state is the
    dashpot strain ``gamma`` under held total strain ``eps_bar``.
    ``kelvin_voigt``: spring and dashpot in parallel; state is the strain
    ``eps`` under held force ``f_bar``.  ``generalized_maxwell``: Maxwell
    branches ``(mu_k, nu_k)`` in parallel with a spring ``mu0``.
    """

    kind: str
    mu: Sequence[float]
    nu: Sequence[float]
    mu0: float = 0.0

    def __post_init__(self):
        mu = np.atleast_1d(np.asarray(self.mu, dtype=float))
        nu = np.atleast_1d(np.asarray(self.nu, dtype=float))
        if self.kind not in ("maxwell", "kelvin_voigt", "generalized_maxwell"):
            raise InvalidParams(f"unknown 0d kind {self.kind!r}")
        if mu.shape != nu.shape or np.any(~(mu > 0)) or np.any(~(nu > 0)) or self.mu0 < 0:
            raise InvalidParams("0d stiffnesses and viscosities must be > 0")
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)

    @property
    def name(self):
        return self.kind.replace("_", "-") + "0d"

    def rhs(self, load):
        """Right-hand side ``y' = rhs(t, y)`` under held strain (Maxwell) or force (Kelvin-Voigt)."""
        mu, nu = self.mu, self.nu
        if self.kind == "kelvin_voigt":
            return lambda t, y: (load - mu * y) / nu
        return lambda t, y: mu * (load - y) / nu

    def force(self, load, y):
        """Force in the network for held strain ``load`` and dashpot strains ``y``."""
        if self.kind == "kelvin_voigt":
            return np.full(np.shape(y)[:-1], float(load))
        return self.mu0 * load + np.sum(self.mu * (load - y), axis=-1)

    def closed_form(self, t, load, y0):
        """Exact state at times ``t`` for held load, starting from ``y0``."""
        t = np.asarray(t, dtype=float)[..., None]
        rate = self.mu / self.nu
        target = load / self.mu if self.kind == "kelvin_voigt" else load
        return target + (np.asarray(y0, dtype=float) - target) * np.exp(-rate * t)


def maxwell0d(mu, nu):
    return ZeroDModel("maxwell", mu, nu)


def kelvin_voigt0d(mu, nu):
    return ZeroDModel("kelvin_voigt", mu, nu)


def generalized_maxwell0d(mus, nus, mu0=0.0):
    return ZeroDModel("generalized_maxwell", mus, nus, mu0)


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------


def _svk(p):
    return stvenant_kirchhoff(p.lam, p.mu)


CATALOG: dict[str, Callable[[MaterialParams], object]] = {
    "newtonian": lambda p: Newtonian(p.nu, p.density, p.conductivity),
    "kelvin-voigt3d": lambda p: KelvinVoigt3d(_svk(p), p.nu, p.density, p.conductivity),
    "perfect-gas": lambda p: PerfectGas(p.r_gas, p.cv, p.density, p.conductivity),
    "svk-elastic": lambda p: ElasticModel(_svk(p), p.density, p.conductivity, "svk-elastic"),
    "reiner-rivlin": lambda p: shear_thickening_reiner_rivlin(p.nu, p.density, p.conductivity),
    "maxwell3d-svk": lambda p: GeneralizedMaxwell3d(
        [_svk(p)], p.kappa, "solid", density=p.density, name="maxwell3d-svk"),
    "maxwell3d-svk-fluid": lambda p: GeneralizedMaxwell3d(
        [_svk(p)], p.kappa, "fluid", density=p.density, name="maxwell3d-svk-fluid"),
    "generalized-maxwell3d-svk": lambda p: GeneralizedMaxwell3d(
        [_svk(p), stvenant_kirchhoff(0.5 * p.lam, 0.5 * p.mu)], [p.kappa, 2.0 * p.kappa],
        "solid", W0=_svk(p), density=p.density, name="generalized-maxwell3d-svk"),
    "oldroyd-b": lambda p: ComplexFluidModel.from_split("oldroyd_b", p.eta, p.lambda1, p.lambda2),
    "zaremba-jaumann": lambda p: ComplexFluidModel.from_split(
        "zaremba_jaumann", p.eta, p.lambda1, p.lambda2),
    "maxwell0d": lambda p: maxwell0d(p.mu, p.nu),
    "kelvin-voigt0d": lambda p: kelvin_voigt0d(p.mu, p.nu),
    "counterexample-h": lambda p: counterexample_h(),
    "counterexample-skew": lambda p: counterexample_skew(),
    "counterexample-flow": lambda p: BrokenFlowModel(_svk(p)),
}


def build_model(name, params=None):
    """Instantiate a catalog model by name."""
    try:
        factory = CATALOG[name]
    except KeyError:
        raise InvalidParams(
            f"unknown model {name!r}; choose from {', '.join(sorted(CATALOG))}"
        ) from None
    return factory(params or MaterialParams())
