"""Randomized property checks for material models.

Each check draws a batch of random admissible states, evaluates a residual
per sample and reduces to a :class:`CheckReport`.  Residuals are made
dimensionless by dividing by ``1 + magnitude`` of the compared quantities.

Sampling is counter based: one uniform ``(n, width)`` block is drawn from
``default_rng(seed)`` and sample ``k`` is a deterministic function of row
``k``, so it depends only on ``(seed, k)``.  ``worst_seed`` in a report is
that row index.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import heat, laws
from . import tensor3 as t3
from .dynamics import rk4_integrate
from .errors import InvalidSymmetry
from .laws import central_difference
from .models import ComplexFluidModel, _blocks, _flat
from .state import ThermoState

STRETCH_RANGE = (0.6, 1.7)
THETA_RANGE = (0.5, 2.0)


@dataclass
class CheckReport:
    name: str
    samples: int
    max_residual: float
    worst_seed: int
    tol: float
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.max_residual <= self.tol)

    def to_line(self):
        return (f"check={self.name} samples={self.samples} "
                f"max_residual={self.max_residual:.6e} pass={str(self.passed).lower()} "
                f"worst_seed={self.worst_seed}")


def _report(name, residuals, tol, **detail):
    r = np.asarray(residuals, dtype=float).reshape(-1)
    bad = ~np.isfinite(r)
    r = np.where(bad, np.inf, r)
    k = int(np.argmax(r)) if r.size else 0
    return CheckReport(name, int(r.size), float(r[k]) if r.size else 0.0, k, tol, detail)


def scaled_residual(a, b):
    """``|a - b| / (1 + max(|a|, |b|))`` over the trailing 3x3 block or vector."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    axes = (-2, -1) if a.ndim >= 2 and a.shape[-2:] == (3, 3) else (-1,)
    nrm = lambda x: np.sqrt(np.sum(x * x, axis=axes))
    return nrm(a - b) / (1.0 + np.maximum(nrm(a), nrm(b)))


# --------------------------------------------------------------------------
# random objects
# --------------------------------------------------------------------------


def random_rotation(rng, size=()):
    """Haar-uniform rotations: QR of a Gaussian matrix with the sign of ``diag(R)`` fixed."""
    size = (size,) if np.isscalar(size) else tuple(size)
    A = rng.standard_normal(size + (3, 3))
    Q, Rr = np.linalg.qr(A)
    Q = Q * np.sign(np.diagonal(Rr, axis1=-2, axis2=-1))[..., None, :]
    flip = t3.det(Q) < 0
    Q[..., :, 0] = np.where(flip[..., None], -Q[..., :, 0], Q[..., :, 0])
    return Q


def random_unimodular(rng, size=()):
    """Gaussian matrix with positive determinant rescaled to ``det = 1``."""
    size = (size,) if np.isscalar(size) else tuple(size)
    A = rng.standard_normal(size + (3, 3))
    d = t3.det(A)
    A[..., 0, :] *= np.sign(d)[..., None]
    return A / np.cbrt(np.abs(d))[..., None, None]


def rotation_from_uniform(u):
    """Haar rotation from three uniforms (unit quaternion construction)."""
    u = np.asarray(u, dtype=float)
    a, b, c = u[..., 0], 2 * np.pi * u[..., 1], 2 * np.pi * u[..., 2]
    s1, s2 = np.sqrt(1 - a), np.sqrt(a)
    x, y, z, w = s1 * np.sin(b), s1 * np.cos(b), s2 * np.sin(c), s2 * np.cos(c)
    return np.stack([
        np.stack([1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)], -1),
        np.stack([2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)], -1),
        np.stack([2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)], -1),
    ], -2)


def defgrad_from_uniform(u):
    """``R V diag(lam) V^T`` with stretches in ``STRETCH_RANGE`` (``det`` in about ``[0.22, 4.9]``)."""
    u = np.asarray(u, dtype=float)
    R = rotation_from_uniform(u[..., 0:3])
    V = rotation_from_uniform(u[..., 3:6])
    lo, hi = STRETCH_RANGE
    lam = lo + (hi - lo) * u[..., 6:9]
    return R @ (V * lam[..., None, :]) @ t3.T(V)


def _signed(u):
    return 2.0 * u - 1.0


def _rows(seed, n, width):
    return np.random.default_rng(seed).random((n, width))


def sample_states(model, seed, n):
    """Random admissible states for ``model`` and one random rotation per sample.

    Column layout of each uniform row: ``F`` (9), ``H`` (9), ``theta`` (1),
    ``G`` (3), rotation (3), then the internal variables and ``pi``.
    Internal strains are sampled like ``F``; other internal variables and
    ``pi`` are uniform in ``[-1, 1]``.
    """
    k, m = model.dims()
    strain = getattr(model, "xi_kind", None) == "strain_blocks"
    width = 25 + k + m
    U = _rows(seed, n, width)
    F = defgrad_from_uniform(U[:, 0:9])
    H = _signed(U[:, 9:18]).reshape(n, 3, 3)
    lo, hi = THETA_RANGE
    theta = lo + (hi - lo) * U[:, 18]
    G = _signed(U[:, 19:22])
    R = rotation_from_uniform(U[:, 22:25])
    if strain:
        xi = _flat(defgrad_from_uniform(U[:, 25:25 + k].reshape(n, k // 9, 9)))
    else:
        xi = _signed(U[:, 25:25 + k])
    pi = _signed(U[:, 25 + k:])
    return ThermoState(F=F, H=H, theta=theta, G=G, xi=xi, pi=pi), R


def sample_eulerian(seed, n):
    """Trace-free velocity gradients, symmetric polymer stresses and rotations."""
    U = _rows(seed, n, 18)
    h = t3.dev(_signed(U[:, 0:9]).reshape(n, 3, 3))
    xi = t3.vec_to_sym(_signed(U[:, 9:15]))
    return h, xi, rotation_from_uniform(U[:, 15:18])


def sample_generic_spd(seed, n, min_gap=0.05):
    """SPD matrices with eigengaps of at least ``min_gap``, vectors ``K`` and rotations."""
    U = _rows(seed, n, 12)
    steps = min_gap + U[:, 0:3]
    lam = 0.2 + np.cumsum(steps, axis=-1)
    V = rotation_from_uniform(U[:, 3:6])
    B = (V * lam[:, None, :]) @ t3.T(V)
    K = _signed(U[:, 6:9])
    return B, K, rotation_from_uniform(U[:, 9:12])


# --------------------------------------------------------------------------
# transformations of states
# --------------------------------------------------------------------------


def _rotate_frame(state, R):
    """Superimposed rigid rotation: ``F -> RF``, ``H -> RH``; ``G`` and ``xi`` unchanged."""
    return state.replace(F=R @ state.F, H=R @ state.H)


def _change_reference(state, S, strain_blocks):
    """Change of reference configuration: ``F -> FS``, ``H -> HS``, ``G -> S^T G``, ``F_i -> F_i S``."""
    xi = state.xi
    if strain_blocks and xi.shape[-1]:
        xi = _flat(_blocks(xi) @ S[..., None, :, :])
    G = np.einsum("...ji,...j->...i", S, state.G)
    return state.replace(F=state.F @ S, H=state.H @ S, G=G, xi=xi)


def _block_right(K, S):
    return _flat(_blocks(K) @ S[..., None, :, :])


# --------------------------------------------------------------------------
# mechanical checks
# --------------------------------------------------------------------------


def check_stress_frame_indifference(model, n_samples=10_000, tol=1e-11, seed=0):
    """``T(RF, RH) = R T(F, H)`` and ``T(F, H) = T(F, Sym(H F^{-1}) F)``."""
    s, R = sample_states(model, seed, n_samples)
    T = laws.total_first_piola(model, s)
    T_rot = laws.total_first_piola(model, _rotate_frame(s, R))
    H_sym = t3.sym(s.H @ t3.inv(s.F)) @ s.F
    T_sym = laws.total_first_piola(model, s.replace(H=H_sym))
    r1 = scaled_residual(T_rot, R @ T)
    r2 = scaled_residual(T, T_sym)
    return _report("stress-frame-indifference", np.maximum(r1, r2), tol,
                   rotation=float(r1.max()), spin=float(r2.max()))


def check_internal_variable_frame_indifference(model, n_samples=10_000, tol=1e-11, seed=0):
    """``T(RF, xi) = R T(F, xi)`` and ``K(RF, xi) = K(F, xi)``."""
    s, R = sample_states(model, seed, n_samples)
    s = s.replace(H=np.zeros_like(s.H))
    sr = _rotate_frame(s, R)
    r1 = scaled_residual(laws.total_first_piola(model, sr), R @ laws.total_first_piola(model, s))
    r2 = scaled_residual(model.flow_rule(sr), model.flow_rule(s))
    return _report("internal-variable-frame-indifference", np.maximum(r1, r2), tol,
                   stress=float(r1.max()), flow=float(r2.max()))


def check_material_symmetry(model, S, n_samples=1_000, tol=1e-10, seed=0, name=None):
    """``T(FS, HS) = T(F, H) cof S`` and, for internal strains, ``K(FS, F_i S) = K(F, F_i) S``."""
    S = np.asarray(S, dtype=float)
    if abs(t3.det(S) - 1.0) > 1e-10:
        raise InvalidSymmetry(f"det S = {t3.det(S):.17g}, expected 1")
    s, _ = sample_states(model, seed, n_samples)
    blocks = getattr(model, "xi_kind", None) == "strain_blocks"
    s2 = _change_reference(s, S, blocks)
    res = scaled_residual(laws.total_first_piola(model, s2),
                          laws.total_first_piola(model, s) @ t3.cofactor(S))
    if blocks and model.n_xi:
        res = np.maximum(res, scaled_residual(model.flow_rule(s2), _block_right(model.flow_rule(s), S)))
    return _report(name or "material-symmetry", res, tol)


def check_material_symmetry_group(model, Ss, n_samples=200, tol=1e-10, seed=0, name=None):
    """Run :func:`check_material_symmetry` for each ``S`` and keep the worst."""
    reports = [check_material_symmetry(model, S, n_samples, tol, seed) for S in Ss]
    worst = max(range(len(reports)), key=lambda i: reports[i].max_residual)
    r = reports[worst]
    return CheckReport(name or "material-symmetry", n_samples * len(Ss), r.max_residual,
                       worst * n_samples + r.worst_seed, tol,
                       {"failed_S": sum(not x.passed for x in reports), "n_S": len(Ss)})


def check_cauchy_symmetry(model, n_samples=10_000, tol=1e-10, seed=0):
    """``F T^T = T F^T``: the Cauchy stress is symmetric."""
    s, _ = sample_states(model, seed, n_samples)
    TFt = laws.total_first_piola(model, s) @ t3.T(s.F)
    return _report("cauchy-symmetry", scaled_residual(TFt, t3.T(TFt)), tol)


def check_clausius_planck(model, n_samples=10_000, tol=1e-10, seed=0):
    """Internal dissipation ``>= 0`` and ``Q.G <= 0`` at random states.

    For a complex fluid the internal dissipation is the augmented one,
    ``sigma:d - (da/dxi):k``, at random trace-free ``h`` and symmetric ``xi``.
    """
    if isinstance(model, ComplexFluidModel):
        h, xi, _ = sample_eulerian(seed, n_samples)
        D = model.augmented_dissipation(h, xi)
        scale = 1.0 + np.abs(model.raw_dissipation(h, xi)) + np.abs(
            t3.frob(model.free_energy_grad(xi), model.flow_rule(h, xi)))
        return _report("clausius-planck", np.maximum(-D, 0.0) / scale, tol,
                       min_dissipation=float(D.min()))
    s, _ = sample_states(model, seed, n_samples)
    Td = model.dissipative_stress(s)
    mech = np.abs(t3.frob(Td, s.H))
    if model.n_xi:
        lam = laws.thermodynamic_force(model, s)
        mech = mech + model.density * np.abs(np.einsum("...i,...i->...", lam, model.flow_rule(s)))
    D = laws.internal_dissipation(model, s)
    Q = model.heat_flux(s)
    QG = np.einsum("...i,...i->...", Q, s.G)
    qscale = 1.0 + np.linalg.norm(Q, axis=-1) * np.linalg.norm(s.G, axis=-1)
    res = np.maximum(np.maximum(-D, 0.0) / (1.0 + mech), np.maximum(QG, 0.0) / qscale)
    return _report("clausius-planck", res, tol, min_dissipation=float(D.min()),
                   max_heat_power=float(QG.max()))


# --------------------------------------------------------------------------
# gradients and convexity
# --------------------------------------------------------------------------


def check_gradient(fn, grad, points, tol=1e-6, name="gradient", inner_ndim=None):
    """Analytic ``grad`` against central differences of ``fn`` at a batch of ``points``.

    Residual per point: ``|g_fd - g| / (1 + |g|)``.
    """
    points = np.asarray(points, dtype=float)
    if inner_ndim is None:
        inner_ndim = points.ndim - 1
    g = np.asarray(grad(points), dtype=float)
    g_fd = central_difference(fn, points, inner_ndim)
    axes = tuple(range(points.ndim - inner_ndim, points.ndim))
    nrm = lambda x: np.sqrt(np.sum(x * x, axis=axes)) if axes else np.abs(x)
    return _report(name, nrm(g_fd - g) / (1.0 + nrm(g)), tol)


def model_gradient_checks(model, n_samples=1_000, tol=1e-6, seed=0):
    """Free-energy derivatives in ``F``, ``theta`` and ``xi`` against central differences."""
    s, _ = sample_states(model, seed, n_samples)
    F, th, xi = s.F, s.theta, s.xi
    out = [
        check_gradient(lambda X: model.free_energy(X, th, xi),
                       lambda X: model.free_energy_dF(X, th, xi), F, tol, "gradient-free-energy-F", 2),
        check_gradient(lambda x: model.free_energy(F, x, xi),
                       lambda x: model.free_energy_dtheta(F, x, xi), th, tol,
                       "gradient-free-energy-theta", 0),
    ]
    if model.n_xi:
        out.append(check_gradient(lambda z: model.free_energy(F, th, z),
                                  lambda z: model.free_energy_dxi(F, th, z), xi, tol,
                                  "gradient-free-energy-xi", 1))
    return out


def _potential_samples(seed, n, n_lam):
    U = _rows(seed, n, 9 + 18 + 2 * n_lam + 1)
    F = defgrad_from_uniform(U[:, 0:9])
    H1 = _signed(U[:, 9:18]).reshape(n, 3, 3)
    H2 = _signed(U[:, 18:27]).reshape(n, 3, 3)
    L1 = 2.0 * _signed(U[:, 27:27 + n_lam])
    L2 = 2.0 * _signed(U[:, 27 + n_lam:27 + 2 * n_lam])
    theta = THETA_RANGE[0] + (THETA_RANGE[1] - THETA_RANGE[0]) * U[:, -1]
    return F, H1, H2, L1, L2, theta


def potential_gradient_checks(pot, n_lam=0, n_samples=1_000, tol=1e-6, seed=0):
    F, H, _, L, _, th = _potential_samples(seed, n_samples, n_lam)
    out = [check_gradient(lambda X: pot.value(F, X, th, None, L),
                          lambda X: pot.grad_H(F, X, th, None, L), H, tol,
                          "gradient-potential-H", 2)]
    if n_lam:
        out.append(check_gradient(lambda Z: pot.value(F, H, th, None, Z),
                                  lambda Z: pot.grad_lam(F, H, th, None, Z), L, tol,
                                  "gradient-potential-lam", 1))
    return out


def check_convexity(pot, n_lam=0, n_samples=1_000, tol=1e-12, seed=0):
    """Midpoint convexity in ``(H, lam)``, zero at the origin and nonnegativity.

    Residual per sample is the largest of: midpoint excess over the endpoint
    average, ``|P(F, 0, 0)|`` and ``max(-P, 0)``, each over ``1 + |P1| + |P2|``.
    """
    F, H1, H2, L1, L2, th = _potential_samples(seed, n_samples, n_lam)
    p1 = pot.value(F, H1, th, None, L1)
    p2 = pot.value(F, H2, th, None, L2)
    pm = pot.value(F, 0.5 * (H1 + H2), th, None, 0.5 * (L1 + L2))
    p0 = pot.value(F, np.zeros_like(H1), th, None, np.zeros_like(L1))
    scale = 1.0 + np.abs(p1) + np.abs(p2)
    mid = np.maximum(pm - 0.5 * (p1 + p2), 0.0)
    neg = np.maximum(-np.minimum(p1, p2), 0.0)
    res = np.maximum.reduce([mid, np.abs(p0), neg]) / scale
    return _report("convexity", res, tol, midpoint=float((mid / scale).max()),
                   origin=float((np.abs(p0) / scale).max()), negative=float((neg / scale).max()))


# --------------------------------------------------------------------------
# objective rates
# --------------------------------------------------------------------------


def _rotation_path(a, b, t):
    """``R(t) = exp(t^2 [b]) exp(t [a])`` and its spin ``R' R^T`` on the time grid ``t``."""
    t = np.asarray(t, dtype=float)[:, None, None]
    Q = t3.rotation_from_vector(t * t * b)
    R = Q @ t3.rotation_from_vector(t * a)
    spin = 2.0 * t[..., None] * t3.skew_from_vector(b) + Q @ t3.skew_from_vector(a) @ t3.T(Q)
    return R, spin


def check_objective_rate(model, n_samples=20, tol=1e-6, seed=0, t_end=1.0, dt=1e-3):
    """Integrate the polymer stress under ``h`` and under ``R h R^T + R' R^T``.

    An objective flow rule gives ``xi* = R xi R^T`` along the whole path.
    The worst of that residual and the asymmetry of ``xi`` is reported.
    """
    rng = np.random.default_rng(seed)
    m1 = t3.dev(rng.standard_normal((n_samples, 3, 3)))
    m2 = t3.dev(rng.standard_normal((n_samples, 3, 3)))
    xi0 = t3.sym(rng.standard_normal((n_samples, 3, 3)))
    a = rng.standard_normal((n_samples, 3))
    b = 0.5 * rng.standard_normal((n_samples, 3))
    # RK4 stages only visit the half-step grid, so the rotation path is tabulated there
    half = 0.5 * dt
    n_half = int(round(t_end / half))
    R, spin = _rotation_path(a, b, half * np.arange(n_half + 1))

    def h(t):
        return np.cos(2.0 * t) * m1 + np.sin(3.0 * t) * m2

    def h_star(t):
        k = int(round(t / half))
        return R[k] @ h(t) @ t3.T(R[k]) + spin[k]

    xi = rk4_integrate(lambda t, y: model.flow_rule(h(t), y), xi0, (0.0, t_end), dt)
    xs = rk4_integrate(lambda t, y: model.flow_rule(h_star(t), y),
                       R[0] @ xi0 @ t3.T(R[0]), (0.0, t_end), dt)
    Rt = R[::2]
    res = scaled_residual(xs.y, Rt @ xi.y @ t3.T(Rt)).max(axis=0)
    asym = (t3.norm(t3.skew(xi.y)) / (1.0 + t3.norm(xi.y))).max(axis=0)
    return _report("objective-rate", np.maximum(res, asym), tol,
                   max_asymmetry=float(asym.max()))


def complex_fluid_gradient_check(model, n_samples=1_000, tol=1e-6, seed=0):
    _, xi, _ = sample_eulerian(seed, n_samples)
    return check_gradient(model.free_energy, model.free_energy_grad, xi, tol,
                          "gradient-free-energy-xi", 2)


# --------------------------------------------------------------------------
# heat flux checks
# --------------------------------------------------------------------------


def _heat_states(seed, n):
    U = _rows(seed, n, 16)
    F = defgrad_from_uniform(U[:, 0:9])
    G = _signed(U[:, 9:12])
    theta = THETA_RANGE[0] + (THETA_RANGE[1] - THETA_RANGE[0]) * U[:, 12]
    return F, G, theta, rotation_from_uniform(U[:, 13:16])


def check_heat_clausius_planck(flux, n_samples=10_000, tol=1e-14, seed=0, name="heat-clausius-planck"):
    """``Q.G <= tol * (1 + |Q||G|)`` for a Lagrangian flux ``flux(F, theta, G)``."""
    F, G, theta, _ = _heat_states(seed, n_samples)
    Q = flux(F, theta, G)
    QG = np.einsum("...i,...i->...", Q, G)
    scale = 1.0 + np.linalg.norm(Q, axis=-1) * np.linalg.norm(G, axis=-1)
    return _report(name, np.maximum(QG, 0.0) / scale, tol, max_heat_power=float(QG.max()))


def check_heat_frame_indifference(flux, n_samples=10_000, tol=1e-12, seed=0):
    """``Q(RF, theta, G) = Q(F, theta, G)``."""
    F, G, theta, R = _heat_states(seed, n_samples)
    return _report("heat-frame-indifference",
                   scaled_residual(flux(R @ F, theta, G), flux(F, theta, G)), tol)


def check_heat_symmetry(flux, S, n_samples=1_000, tol=1e-10, seed=0):
    """``Q(FS, theta, S^T G) = (cof S)^T Q(F, theta, G)`` for unimodular ``S``."""
    S = np.asarray(S, dtype=float)
    if abs(t3.det(S) - 1.0) > 1e-10:
        raise InvalidSymmetry(f"det S = {t3.det(S):.17g}, expected 1")
    F, G, theta, _ = _heat_states(seed, n_samples)
    lhs = flux(F @ S, theta, G @ S)
    rhs = np.einsum("ji,...j->...i", t3.cofactor(S), flux(F, theta, G))
    return _report("heat-symmetry", scaled_residual(lhs, rhs), tol)


def check_isotropic_flux_equivariance(coeffs, n_samples=10_000, tol=1e-10, seed=0, theta=1.0):
    """``q(R B R^T, R K) = R q(B, K)`` on SPD ``B`` with separated eigenvalues."""
    B, K, R = sample_generic_spd(seed, n_samples)
    q = heat.isotropic_flux(coeffs, B, theta, K)
    qr = heat.isotropic_flux(coeffs, R @ B @ t3.T(R), theta, np.einsum("...ij,...j->...i", R, K))
    return _report("isotropic-flux-equivariance",
                   scaled_residual(qr, np.einsum("...ij,...j->...i", R, q)), tol)


def check_signature_invariance(n_samples=1_000, seed=0):
    """``s(R B R^T, R K) = s(B, K)``: residual is the number of mismatches."""
    B, K, R = sample_generic_spd(seed, n_samples)
    s1 = t3.heat_signature(B, K)
    s2 = t3.heat_signature(R @ B @ t3.T(R), np.einsum("...ij,...j->...i", R, K))
    return _report("signature-invariance", (s1 != s2).astype(float), 0.0,
                   nonzero=int(np.count_nonzero(s1)))


# --------------------------------------------------------------------------
# batteries
# --------------------------------------------------------------------------


def _symmetry_set(model, seed, n_rot=100, n_uni=10):
    rng = np.random.default_rng(seed + 1)
    if model.symmetry == "fluid":
        return "material-symmetry-unimodular", random_unimodular(rng, n_uni)
    if model.symmetry == "isotropic":
        return "material-symmetry-rotation", random_rotation(rng, n_rot)
    return None, None


def run_battery(model, n_samples=10_000, seed=0):
    """All checks that apply to ``model``, in a fixed order."""
    if isinstance(model, ComplexFluidModel):
        reports = [check_clausius_planck(model, n_samples, seed=seed),
                   check_objective_rate(model, seed=seed)]
        if model.free_energy_kind != "none":
            reports.append(complex_fluid_gradient_check(model, min(n_samples, 1_000), seed=seed))
        return reports

    reports = []
    if model.n_xi and getattr(model, "xi_kind", None) == "strain_blocks":
        reports.append(check_internal_variable_frame_indifference(model, n_samples, seed=seed))
    else:
        reports.append(check_stress_frame_indifference(model, n_samples, seed=seed))
    name, Ss = _symmetry_set(model, seed)
    if name is not None:
        reports.append(check_material_symmetry_group(model, Ss, max(1, min(n_samples, 10_000) // len(Ss)),
                                                     seed=seed, name=name))
    reports.append(check_cauchy_symmetry(model, n_samples, seed=seed))
    reports.append(check_clausius_planck(model, n_samples, seed=seed))
    reports.extend(model_gradient_checks(model, min(n_samples, 1_000), seed=seed))
    if model.potential is not None:
        n_lam = model.n_xi
        reports.extend(potential_gradient_checks(model.potential, n_lam, min(n_samples, 1_000), seed=seed))
        reports.append(check_convexity(model.potential, n_lam, min(n_samples, 1_000), seed=seed))
    if model.conductivity is not None:
        k = model.conductivity
        reports.append(check_heat_clausius_planck(lambda F, th, G: heat.fourier_flux(F, G, k),
                                                  n_samples, seed=seed))
    return reports
