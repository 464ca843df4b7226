"""Time integration of internal variables along prescribed motions.

Classical fixed-step RK4, dissipation tracing along Lagrangian or Eulerian
motions, and two named experiments: periodic shaking of a complex fluid at a
fixed point and stress relaxation of a Maxwell material under held strain.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import laws
from . import tensor3 as t3
from .errors import DetFiCollapse, InvalidParams, NonFinite
from .models import ComplexFluidModel, GeneralizedMaxwell3d, ZeroDModel
from .state import ThermoState

CSV_HEADER = ("t", "raw_dissipation", "augmented_dissipation", "free_energy", "stress_fro_norm")


@dataclass
class Trajectory:
    """Time grid, states and per-step diagnostics.

    Arrays have the time axis first; any trailing batch axes (for example
    one per seed) follow.  ``stress`` holds full 3x3 tensors.
    """

    t: np.ndarray
    y: np.ndarray
    raw_dissipation: np.ndarray | None = None
    augmented_dissipation: np.ndarray | None = None
    free_energy: np.ndarray | None = None
    stress: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def dt(self):
        return self.t[1] - self.t[0]

    @property
    def stress_fro_norm(self):
        return None if self.stress is None else t3.norm(self.stress)

    def _column(self, which):
        col = self.augmented_dissipation if which == "augmented" else self.raw_dissipation
        if col is None:
            raise ValueError(f"trajectory has no {which} dissipation")
        return col

    def min_dissipation(self, which="augmented"):
        """Minimum over time, refined by a parabola through the discrete minimum and its neighbours."""
        D = np.asarray(self._column(which))
        k = np.argmin(D, axis=0)
        dmin = np.take_along_axis(D, k[None], axis=0)[0]
        interior = (k > 0) & (k < len(D) - 1)
        km = np.clip(k - 1, 0, len(D) - 1)
        kp = np.clip(k + 1, 0, len(D) - 1)
        a = np.take_along_axis(D, km[None], axis=0)[0]
        b = np.take_along_axis(D, kp[None], axis=0)[0]
        curv = a - 2.0 * dmin + b
        ok = interior & (curv > 0)
        vertex = dmin - (b - a) ** 2 / (8.0 * np.where(ok, curv, 1.0))
        out = np.where(ok, np.minimum(vertex, dmin), dmin)
        return float(out) if out.ndim == 0 else out

    def first_negative_t(self, which="augmented"):
        """Linearly interpolated first time the dissipation drops below zero (NaN if never)."""
        D = np.asarray(self._column(which))
        neg = D < 0
        any_neg = neg.any(axis=0)
        k = np.argmax(neg, axis=0)
        kprev = np.maximum(k - 1, 0)
        d0 = np.take_along_axis(D, kprev[None], axis=0)[0]
        d1 = np.take_along_axis(D, k[None], axis=0)[0]
        t0, t1 = self.t[kprev], self.t[k]
        frac = np.where(d0 > d1, d0 / np.where(d0 > d1, d0 - d1, 1.0), 0.0)
        tc = np.where(k > 0, t0 + frac * (t1 - t0), self.t[0])
        out = np.where(any_neg, tc, np.nan)
        return float(out) if out.ndim == 0 else out

    def select(self, index):
        """Trajectory of one batch entry."""
        pick = lambda a: None if a is None else np.asarray(a)[(slice(None),) + np.index_exp[index]]
        return Trajectory(self.t, pick(self.y), pick(self.raw_dissipation),
                          pick(self.augmented_dissipation), pick(self.free_energy),
                          pick(self.stress), dict(self.meta))


def _finite_or_raise(y, t):
    if not np.all(np.isfinite(y)):
        raise NonFinite(f"state became non-finite at t={t:.17g}")


def time_grid(t_span, dt):
    t0, t1 = (float(v) for v in t_span)
    if not (t1 > t0) or not (dt > 0):
        raise InvalidParams(f"need t1 > t0 and dt > 0, got span={t_span}, dt={dt}")
    n = int(round((t1 - t0) / dt))
    if n < 1 or abs(n * dt - (t1 - t0)) > 1e-9 * max(1.0, abs(t1 - t0)):
        raise InvalidParams(f"dt={dt} does not divide the span {t1 - t0}")
    return t0 + dt * np.arange(n + 1)


def rk4_integrate(rhs, y0, t_span, dt, check=None):
    """Classical fixed-step RK4 for ``y' = rhs(t, y)``.

    ``check(t, y)`` is called after every step and may raise.  Raises
    :class:`NonFinite` when the state stops being finite.
    """
    t = time_grid(t_span, dt)
    y0 = np.asarray(y0, dtype=float)
    _finite_or_raise(y0, t[0])
    ys = np.empty((len(t),) + y0.shape)
    ys[0] = y = y0
    h = float(dt)
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(len(t) - 1):
            tn = t[n]
            k1 = rhs(tn, y)
            k2 = rhs(tn + 0.5 * h, y + 0.5 * h * k1)
            k3 = rhs(tn + 0.5 * h, y + 0.5 * h * k2)
            k4 = rhs(tn + h, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            _finite_or_raise(y, t[n + 1])
            if check is not None:
                check(t[n + 1], y)
            ys[n + 1] = y
    return Trajectory(t=t, y=ys)


# --------------------------------------------------------------------------
# shaking a complex fluid
# --------------------------------------------------------------------------


def random_traceless(seed, batch_shape=()):
    """Standard normal 3x3 entries with a third of the trace removed from the diagonal."""
    m = np.random.default_rng(seed).standard_normal(tuple(batch_shape) + (3, 3))
    return t3.dev(m)


def _poly_mul(X, Y):
    out = {}
    for w1, a in X.items():
        for w2, b in Y.items():
            out[w1 + w2] = out.get(w1 + w2, 0.0) + a * b
    return out


def _poly_axpy(X, s, Y):
    out = dict(X)
    for w, b in Y.items():
        out[w] = out.get(w, 0.0) + s * b
    return out


def _linear_rk4_steps(Lop, lambda1, forcing, c1, c2, c4, h):
    """RK4 step maps for ``y' = (c(t) L - I/lambda1) y + c(t) f`` as augmented 10x10 matrices.

    With ``A = [[L, f], [0, 0]]`` and ``D = diag(I/lambda1, 0)`` each stage
    matrix is ``c A - D``; the step map is a polynomial in the words over
    ``{A, D}`` whose scalar coefficients depend on the step only, so all
    steps are assembled with one matrix product.
    """
    B = Lop.shape[:-2]
    A = np.zeros(B + (10, 10))
    A[..., :9, :9] = Lop
    A[..., :9, 9] = forcing
    D = np.zeros((10, 10))
    D[:9, :9] = np.eye(9) / lambda1
    one = np.ones_like(c1)
    A1, A2, A4 = ({"A": c, "D": -one} for c in (c1, c2, c4))
    K1 = A1
    K2 = _poly_axpy(A2, 0.5 * h, _poly_mul(A2, K1))
    K3 = _poly_axpy(A2, 0.5 * h, _poly_mul(A2, K2))
    K4 = _poly_axpy(A4, h, _poly_mul(A4, K3))
    P = _poly_axpy(_poly_axpy(_poly_axpy(K1, 2.0, K2), 2.0, K3), 1.0, K4)
    words = sorted(P, key=lambda w: (len(w), w))
    mats = {"A": A, "D": np.broadcast_to(D, A.shape)}

    def word(w):
        if w not in mats:
            mats[w] = mats[w[0]] @ word(w[1:])
        return mats[w]

    W = [word(w) for w in words]
    W = np.stack(W).reshape(len(words), -1)
    coef = np.stack([np.broadcast_to(P[w], c1.shape) for w in words], axis=-1)
    steps = ((h / 6.0) * coef @ W).reshape(c1.shape + B + (10, 10))
    steps[..., np.arange(10), np.arange(10)] += 1.0
    return steps


def _shake_linear(model, m, omega, t, xi0, chunk=4096):
    h = t[1] - t[0]
    E = np.eye(9).reshape(9, 3, 3)
    mb = m[..., None, :, :]
    cols = -model.ob(E, mb)  # (..., 9, 3, 3): image of each basis matrix
    Lop = np.swapaxes(cols.reshape(m.shape[:-2] + (9, 9)), -1, -2)
    forcing = (2.0 * model.eta_p / model.lambda1) * t3.sym(m).reshape(m.shape[:-2] + (9,))
    y = np.concatenate([xi0.reshape(m.shape[:-2] + (9,)), np.ones(m.shape[:-2] + (1,))], axis=-1)
    ys = np.empty((len(t),) + y.shape)
    ys[0] = y
    n_steps = len(t) - 1
    with np.errstate(over="ignore", invalid="ignore"):
        for start in range(0, n_steps, chunk):
            tn = t[start:min(start + chunk, n_steps)]
            P = _linear_rk4_steps(Lop, model.lambda1, forcing, np.cos(omega * tn),
                                  np.cos(omega * (tn + 0.5 * h)), np.cos(omega * (tn + h)), h)
            _finite_or_raise(P, tn[0])
            for j in range(len(tn)):
                y = (P[j] @ y[..., None])[..., 0]
                ys[start + j + 1] = y
            _finite_or_raise(y, t[start + len(tn)])
    return ys[..., :9].reshape(ys.shape[:-1] + (3, 3))


def shaking_experiment(model, m, omega=0.75, t_end=4.0, dt=1e-3, xi0=None, method="auto"):
    """Integrate the polymer stress at a fixed point of the shaken fluid.

    The velocity ``v(x, t) = cos(omega t) m (x - x0)`` vanishes at ``x0``, so
    the velocity gradient there is ``h(t) = cos(omega t) m`` and the material
    derivative is a plain time derivative.  ``m`` may carry leading batch
    axes (one trajectory per entry); its trace is projected off.

    ``method='linear'`` applies the RK4 step as a precomputed affine map
    (valid for the built-in derivatives, which are linear in ``xi`` and
    ``h``); ``method='generic'`` calls :func:`rk4_integrate` with an explicit
    right-hand side.  ``'auto'`` picks ``linear`` when possible.
    """
    if not isinstance(model, ComplexFluidModel):
        raise InvalidParams("shaking needs a complex fluid model")
    if not omega > 0:
        raise InvalidParams("omega must be > 0")
    m = t3.dev(np.asarray(m, dtype=float))
    batch = m.shape[:-2]
    xi0 = np.zeros(batch + (3, 3)) if xi0 is None else np.broadcast_to(
        t3.sym(np.asarray(xi0, dtype=float)), batch + (3, 3)).copy()
    if method == "auto":
        method = "linear" if model.kind in ("oldroyd_b", "zaremba_jaumann") else "generic"
    t = time_grid((0.0, t_end), dt)
    if method == "linear":
        xi = _shake_linear(model, m, omega, t, xi0)
    elif method == "generic":
        sym_m = t3.sym(m)
        ob, lam1, etap = model.ob, model.lambda1, model.eta_p

        def rhs(tt, y):
            c = np.cos(omega * tt)
            return -ob(y, c * m) + (2.0 * etap * c * sym_m - y) / lam1

        xi = rk4_integrate(rhs, xi0, (0.0, t_end), dt).y
    else:
        raise InvalidParams(f"unknown method {method!r}")

    c = np.cos(omega * t).reshape((-1,) + (1,) * (len(batch) + 2))
    h = c * m
    traj = Trajectory(t=t, y=xi)
    _complex_fluid_diagnostics(model, traj, h)
    traj.meta.update(omega=omega, dt=dt, t_end=t_end, kind=model.kind,
                     free_energy=model.free_energy_kind, method=method)
    return traj


def _complex_fluid_diagnostics(model, traj, h):
    xi = traj.y
    traj.raw_dissipation = model.raw_dissipation(h, xi)
    traj.augmented_dissipation = model.augmented_dissipation(h, xi)
    traj.free_energy = model.free_energy(xi)
    traj.stress = model.stress(h, xi)
    traj.meta["max_asymmetry"] = float(np.max(t3.norm(t3.skew(xi)))) if xi.size else 0.0
    traj.meta["max_abs_trace"] = float(np.max(np.abs(t3.trace(xi)))) if xi.size else 0.0


# --------------------------------------------------------------------------
# prescribed motions and dissipation tracing
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LagrangianMotion:
    """``F(t)`` and ``H(t) = dF/dt`` with temperature and temperature gradient (constants or callables)."""

    F: Callable
    H: Callable
    theta: object = 1.0
    G: object = None

    def at(self, t):
        val = lambda f: f(t) if callable(f) else f
        return val(self.F), val(self.H), val(self.theta), val(self.G)

    def consistency_residual(self, t, dt=1e-4):
        """``|(F(t+dt) - F(t))/dt - H(t + dt/2)|``: small when H is the rate of F."""
        return float(t3.norm((self.F(t + dt) - self.F(t)) / dt - self.H(t + 0.5 * dt)))


@dataclass(frozen=True)
class EulerianMotion:
    """Velocity gradient ``h(t)`` at a fixed point."""

    h: Callable


def coleman_noll_motion(F0, H0, theta=1.0, G=None):
    """Affine motion ``F(t) = F0 + t H0``."""
    F0 = np.asarray(F0, dtype=float)
    H0 = np.asarray(H0, dtype=float)
    return LagrangianMotion(lambda t: F0 + t * H0, lambda t: H0, theta, G)


def dissipation_trace(model, motion, state0, t_end, dt):
    """Advance the internal variables along ``motion`` and record dissipation diagnostics.

    For a Lagrangian motion ``state0`` supplies the initial ``xi`` and the
    opaque ``pi``; the trajectory records ``T_Rd:H`` (raw), the internal
    dissipation (augmented), the free energy, the Cauchy stress and, in
    ``meta['clausius_duhem']``, the Clausius-Duhem left-hand side.  For an
    Eulerian motion of a complex fluid ``state0`` is the initial ``xi``.
    """
    if isinstance(motion, EulerianMotion):
        if not isinstance(model, ComplexFluidModel):
            raise InvalidParams("Eulerian motions need a complex fluid model")
        xi0 = t3.sym(np.asarray(state0, dtype=float))
        traj = rk4_integrate(lambda t, y: model.flow_rule(motion.h(t), y), xi0, (0.0, t_end), dt)
        h = np.stack([motion.h(ti) for ti in traj.t])
        _complex_fluid_diagnostics(model, traj, h)
        return traj

    pi = state0.pi

    def state_at(t, xi):
        F, H, theta, G = motion.at(t)
        return ThermoState(F=F, H=H, theta=theta, G=G, xi=xi, pi=pi)

    check = _det_fi_check(model) if getattr(model, "xi_kind", None) == "strain_blocks" else None
    if model.n_xi:
        traj = rk4_integrate(lambda t, y: model.flow_rule(state_at(t, y)),
                             state0.xi, (0.0, t_end), dt, check=check)
    else:
        t = time_grid((0.0, t_end), dt)
        traj = Trajectory(t=t, y=np.zeros((len(t), 0)))
    parts = [motion.at(ti) for ti in traj.t]
    F = np.stack([np.asarray(p[0], dtype=float) for p in parts])
    H = np.stack([np.asarray(p[1], dtype=float) for p in parts])
    theta = np.array([np.asarray(p[2], dtype=float) for p in parts])
    G = np.stack([np.zeros(3) if p[3] is None else np.asarray(p[3], dtype=float) for p in parts])
    pis = np.broadcast_to(pi, (len(traj.t),) + pi.shape[-1:])
    states = ThermoState(F=F, H=H, theta=theta, G=G, xi=traj.y, pi=pis)
    _lagrangian_diagnostics(model, traj, states)
    traj.meta["clausius_duhem"] = laws.clausius_duhem_lhs(model, states)
    return traj


def _lagrangian_diagnostics(model, traj, states):
    traj.raw_dissipation = t3.frob(model.dissipative_stress(states), states.H)
    traj.augmented_dissipation = laws.internal_dissipation(model, states)
    traj.free_energy = model.free_energy(states.F, states.theta, states.xi)
    traj.stress = laws.cauchy_from_piola(laws.total_first_piola(model, states), states.F)


def _det_fi_check(model, min_det=t3.MIN_DET):
    def check(t, y):
        blocks = np.asarray(y).reshape(np.shape(y)[:-1] + (-1, 3, 3))
        if np.any(~(t3.det(blocks) > min_det)):
            raise DetFiCollapse(f"det F_i dropped to {np.min(t3.det(blocks)):.3e} at t={t:.17g}")
    return check


# --------------------------------------------------------------------------
# stress relaxation
# --------------------------------------------------------------------------


def relaxation_experiment(model, alpha, t_end=5.0, dt=1e-3, Fi0=None, gamma0=0.0):
    """Hold a strain and let the internal variables relax.

    For a 3d Maxwell-family model ``F(t) = alpha I`` and every internal
    strain starts at ``Fi0`` (identity by default); ``det F_i`` is monitored
    and :class:`DetFiCollapse` is raised if it reaches ``1e-12``.  For a 0d
    Maxwell model ``alpha`` is the held total strain and ``gamma0`` the
    initial dashpot strain.
    """
    if not alpha > 0:
        raise InvalidParams("alpha must be > 0")
    if isinstance(model, ZeroDModel):
        if model.kind == "kelvin_voigt":
            raise InvalidParams("relaxation needs a Maxwell-type model")
        y0 = np.full(model.mu.shape, float(gamma0))
        traj = rk4_integrate(model.rhs(alpha), y0, (0.0, t_end), dt)
        f = model.force(alpha, traj.y)
        stretch = alpha - traj.y
        traj.raw_dissipation = np.sum(model.mu**2 * stretch**2 / model.nu, axis=-1)
        traj.augmented_dissipation = traj.raw_dissipation
        traj.free_energy = 0.5 * np.sum(model.mu * stretch**2, axis=-1) + 0.5 * model.mu0 * alpha**2
        traj.stress = f[:, None, None] * np.diag([1.0, 0.0, 0.0])
        traj.meta.update(force=f, alpha=alpha, dt=dt)
        return traj
    if not isinstance(model, GeneralizedMaxwell3d):
        raise InvalidParams("relaxation needs a Maxwell-family model")
    n = model.n_xi // 9
    Fi0 = np.eye(3) if Fi0 is None else np.asarray(Fi0, dtype=float)
    if np.any(~(t3.det(Fi0) > t3.MIN_DET)):
        raise DetFiCollapse("initial det F_i must be > 1e-12")
    xi0 = np.tile(Fi0.ravel(), n)
    F = alpha * np.eye(3)
    motion = LagrangianMotion(lambda t: F, lambda t: np.zeros((3, 3)))
    traj = dissipation_trace(model, motion, ThermoState(F=F, xi=xi0), t_end, dt)
    traj.meta.update(alpha=alpha, dt=dt)
    return traj


# --------------------------------------------------------------------------
# export
# --------------------------------------------------------------------------


def _fmt(v):
    return format(float(v), ".17g")


def csv_rows(traj):
    n = len(traj.t)
    cols = [traj.raw_dissipation, traj.augmented_dissipation, traj.free_energy, traj.stress_fro_norm]
    cols = [np.full(n, np.nan) if c is None else np.asarray(c, dtype=float).reshape(n) for c in cols]
    for k in range(n):
        yield [_fmt(traj.t[k])] + [_fmt(c[k]) for c in cols]


def write_csv(traj, out):
    """Write ``t,raw_dissipation,augmented_dissipation,free_energy,stress_fro_norm`` rows.

    ``out`` is a path or a text stream; a batched trajectory must be reduced
    with :meth:`Trajectory.select` first.
    """
    if isinstance(out, io.TextIOBase) or hasattr(out, "write"):
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        writer.writerows(csv_rows(traj))
        return
    with open(out, "w", newline="") as fh:
        write_csv(traj, fh)
