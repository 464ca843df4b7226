"""Heat-flux laws: Fourier, isotropic representation, fluids, diffusion potentials."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tensor3 as t3
from .laws import central_difference


def _dot(a, b):
    return np.einsum("...i,...i->...", a, b)


def _matvec(M, v):
    return np.einsum("...ij,...j->...i", M, v)


def fourier_flux(F, G, k):
    """Lagrangian Fourier flux ``-k C^{-1} G`` with ``C = F^T F``."""
    if not k > 0:
        raise ValueError("conductivity must be > 0")
    F = t3.check_defgrad(F)
    C = t3.T(F) @ F
    return -k * np.linalg.solve(C, np.asarray(G, dtype=float)[..., None])[..., 0]


def _zero(iB, theta, iBK):
    return np.zeros(np.shape(iBK[0]))


@dataclass(frozen=True)
class IsotropicFluxCoefficients:
    """Scalar coefficient functions of the isotropic flux representation.

    Each function receives ``(iB, theta, iBK)`` where ``iB`` is the triple of
    principal invariants of ``B`` and ``iBK = (|K|^2, |BK|^2, K.BK, s)`` with
    ``s`` the integer signature from :func:`tensor3.heat_signature`.
    """

    alpha0: Callable = _zero
    alpha1: Callable = _zero
    alpha2: Callable = _zero


def flux_invariants(B, K):
    """``(iota(B), iota(B, K))`` as used by the coefficient functions."""
    B = np.asarray(B, dtype=float)
    K = np.asarray(K, dtype=float)
    BK = _matvec(B, K)
    s = np.asarray(t3.heat_signature(B, K))
    return t3.principal_invariants(B), (_dot(K, K), _dot(BK, BK), _dot(K, BK), s)


def isotropic_flux(coeffs, B, theta, K):
    """``alpha0 K + alpha1 BK + alpha2 K x BK``; ``B`` must be positive definite."""
    B = np.asarray(B, dtype=float)
    K = np.asarray(K, dtype=float)
    iB, iBK = flux_invariants(B, K)
    BK = _matvec(B, K)
    a0 = np.asarray(coeffs.alpha0(iB, theta, iBK), dtype=float)[..., None]
    a1 = np.asarray(coeffs.alpha1(iB, theta, iBK), dtype=float)[..., None]
    a2 = np.asarray(coeffs.alpha2(iB, theta, iBK), dtype=float)[..., None]
    return a0 * K + a1 * BK + a2 * np.cross(K, BK)


def isotropic_flux_cp_margin(coeffs, B, theta, K):
    """``alpha0 |K|^2 + alpha1 BK.K``, equal to ``q.K``; nonpositive iff the flux is admissible."""
    iB, iBK = flux_invariants(B, K)
    a0 = np.asarray(coeffs.alpha0(iB, theta, iBK), dtype=float)
    a1 = np.asarray(coeffs.alpha1(iB, theta, iBK), dtype=float)
    return a0 * iBK[0] + a1 * iBK[2]


def fluid_flux(cond, F, theta, G):
    """Eulerian flux of a thermally fluid material, ``-k(det F, theta, |K|) K`` with ``K = F^{-T} G``.

    Pull it back with :func:`piola_heat_flux` to get the Lagrangian flux.
    """
    if np.any(~(np.asarray(theta) > 0)):
        raise ValueError("temperature must be > 0")
    F = t3.check_defgrad(F)
    K = np.linalg.solve(t3.T(F), np.asarray(G, dtype=float)[..., None])[..., 0]
    n = np.linalg.norm(K, axis=-1)
    k = np.asarray(cond(t3.det(F), theta, n), dtype=float)
    return -k[..., None] * K


def piola_heat_flux(q, F):
    """Lagrangian flux ``cof(F)^T q`` from an Eulerian one."""
    return _matvec(t3.T(t3.cofactor(F)), q)


def flux_from_diffusion_potential(pdiff, state, grad=None):
    """Heat flux ``dP_diff/dG`` at ``state``; ``grad`` is an optional analytic gradient."""
    F, theta, G = state.F, state.theta, state.G
    t3.check_defgrad(F)
    if grad is not None:
        return np.asarray(grad(F, theta, G), dtype=float)
    return central_difference(lambda g: pdiff(F, theta, g), G, 1)


# --------------------------------------------------------------------------
# example laws
# --------------------------------------------------------------------------


def fourier_diffusion_potential(k):
    """``(value, grad)`` of ``-(k/2) G.C^{-1}G``, whose gradient is the Fourier flux."""

    def value(F, theta, G):
        G = np.asarray(G, dtype=float)
        return -0.5 * k * _dot(G, np.linalg.solve(t3.T(F) @ F, G[..., None])[..., 0])

    def grad(F, theta, G):
        return fourier_flux(F, G, k)

    return value, grad


def quartic_diffusion_potential(c=1.0):
    """``(value, grad)`` of ``-(c/4) |G|^4``."""

    def value(F, theta, G):
        n2 = _dot(G, G)
        return -0.25 * c * n2**2

    def grad(F, theta, G):
        G = np.asarray(G, dtype=float)
        return -c * _dot(G, G)[..., None] * G

    return value, grad


def constant_conductivity(k):
    return lambda J, theta, n: np.full(np.shape(n), float(k))


def gradient_conductivity(J, theta, n):
    """Conductivity equal to the Eulerian gradient norm (``q.K = -|K|^3``)."""
    return np.asarray(n, dtype=float)


def eulerian_fourier_coefficients(k):
    """``q = -k K``."""
    return IsotropicFluxCoefficients(alpha0=lambda iB, th, iBK: np.full(np.shape(iBK[0]), -float(k)))


def sample_isotropic_coefficients():
    """Nonlinear admissible set exercising every argument, including ``s``."""

    def a0(iB, th, iBK):
        return -(1.0 + iBK[0]) * th

    def a1(iB, th, iBK):
        return -0.5 / (1.0 + iB[0] + iB[1] * iB[2])

    def a2(iB, th, iBK):
        return iBK[3] * (1.0 + iBK[1]) + iBK[2]

    return IsotropicFluxCoefficients(a0, a1, a2)
