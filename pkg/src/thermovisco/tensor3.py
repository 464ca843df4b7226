"""Small-matrix linear algebra for 3x3 tensors.

Every function accepts stacks of matrices: the last two axes hold the 3x3
block and any leading axes are treated as a batch.  Symmetric tensors are
stored as full 3x3 arrays; :func:`sym_to_vec` / :func:`vec_to_sym` convert to
the 6-entry packed form when a compact representation is needed.
"""

from __future__ import annotations

import numpy as np

from .errors import NonPositiveDeterminant, NotPositiveDefinite

MIN_DET = 1e-12
DISTINCTNESS_TOL = 1e-8

_SYM_INDEX = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))


def T(M):
    """Transpose of the trailing 3x3 block."""
    return np.swapaxes(M, -1, -2)


def eye_like(M):
    return np.broadcast_to(np.eye(3), np.shape(M)[:-2] + (3, 3))


def sym(M):
    return 0.5 * (M + T(M))


def skew(M):
    return 0.5 * (M - T(M))


def sym_skew(M):
    """Split ``M`` into ``(sym M, skew M)``; the two parts add up to ``M``."""
    M = np.asarray(M, dtype=float)
    return sym(M), skew(M)


def trace(M):
    return np.trace(M, axis1=-2, axis2=-1)


def dev(M):
    """Trace-free part."""
    return M - trace(M)[..., None, None] / 3.0 * np.eye(3)


def frob(A, B):
    """Frobenius inner product ``A:B`` over the trailing 3x3 block."""
    return np.einsum("...ij,...ij->...", A, B)


def norm(A):
    return np.sqrt(frob(A, A))


def det(M):
    M = np.asarray(M, dtype=float)
    return (
        M[..., 0, 0] * (M[..., 1, 1] * M[..., 2, 2] - M[..., 1, 2] * M[..., 2, 1])
        - M[..., 0, 1] * (M[..., 1, 0] * M[..., 2, 2] - M[..., 1, 2] * M[..., 2, 0])
        + M[..., 0, 2] * (M[..., 1, 0] * M[..., 2, 1] - M[..., 1, 1] * M[..., 2, 0])
    )


def cofactor(F):
    """Matrix of signed 2x2 minors.

    The rows of ``cof F`` are the cross products of pairs of rows of ``F``,
    which keeps the formula valid for singular ``F``.
    """
    F = np.asarray(F, dtype=float)
    r0, r1, r2 = F[..., 0, :], F[..., 1, :], F[..., 2, :]
    return np.stack([np.cross(r1, r2), np.cross(r2, r0), np.cross(r0, r1)], axis=-2)


def inv(F):
    return np.linalg.inv(F)


def inv_T(F):
    return T(np.linalg.inv(F))


def check_defgrad(F, min_det=MIN_DET):
    """Return ``F`` as a float array, raising if any ``det F <= min_det``."""
    F = np.asarray(F, dtype=float)
    if F.shape[-2:] != (3, 3):
        raise ValueError(f"expected (...,3,3) array, got shape {F.shape}")
    J = det(F)
    if np.any(~(J > min_det)):
        raise NonPositiveDeterminant(f"det F = {np.min(J):.3e} is not > {min_det:g}")
    return F


def principal_invariants(B):
    """``(tr B, tr cof B, det B)``."""
    B = np.asarray(B, dtype=float)
    return trace(B), trace(cofactor(B)), det(B)


def sym_to_vec(S):
    """Pack a symmetric tensor as ``(S11, S22, S33, S23, S13, S12)``."""
    S = np.asarray(S, dtype=float)
    return np.stack([S[..., i, j] for i, j in _SYM_INDEX], axis=-1)


def vec_to_sym(v):
    v = np.asarray(v, dtype=float)
    S = np.empty(v.shape[:-1] + (3, 3))
    for k, (i, j) in enumerate(_SYM_INDEX):
        S[..., i, j] = v[..., k]
        S[..., j, i] = v[..., k]
    return S


def skew_from_vector(a):
    """Skew matrix ``[a]x`` such that ``[a]x b = a x b``."""
    a = np.asarray(a, dtype=float)
    z = np.zeros(a.shape[:-1])
    return np.stack(
        [
            np.stack([z, -a[..., 2], a[..., 1]], axis=-1),
            np.stack([a[..., 2], z, -a[..., 0]], axis=-1),
            np.stack([-a[..., 1], a[..., 0], z], axis=-1),
        ],
        axis=-2,
    )


def rotation_from_vector(a):
    """Rodrigues formula: rotation of angle ``|a|`` about ``a/|a|``."""
    a = np.asarray(a, dtype=float)
    theta = np.linalg.norm(a, axis=-1)[..., None, None]
    K = skew_from_vector(a)
    small = theta < 1e-8
    safe = np.where(small, 1.0, theta)
    s = np.where(small, 1.0 - theta**2 / 6.0, np.sin(safe) / safe)
    c = np.where(small, 0.5 - theta**2 / 24.0, (1.0 - np.cos(safe)) / safe**2)
    return np.eye(3) + s * K + c * (K @ K)


# --------------------------------------------------------------------------
# symmetric eigendecomposition
# --------------------------------------------------------------------------


def _largest_cross(A):
    """Unit vector spanning the null space of a rank-2 symmetric matrix."""
    r0, r1, r2 = A[..., 0, :], A[..., 1, :], A[..., 2, :]
    c = np.stack([np.cross(r0, r1), np.cross(r0, r2), np.cross(r1, r2)], axis=-2)
    n2 = np.einsum("...ki,...ki->...k", c, c)
    best = np.argmax(n2, axis=-1)
    v = np.take_along_axis(c, best[..., None, None], axis=-2)[..., 0, :]
    nv = np.sqrt(np.take_along_axis(n2, best[..., None], axis=-1))
    return v / np.where(nv > 0, nv, 1.0)


def _cardano(B):
    q = trace(B) / 3.0
    Bq = B - q[..., None, None] * np.eye(3)
    p = np.sqrt(frob(Bq, Bq) / 6.0)
    ok = p > 0
    psafe = np.where(ok, p, 1.0)
    r = np.clip(det(Bq / psafe[..., None, None]) / 2.0, -1.0, 1.0)
    phi = np.arccos(r) / 3.0
    lam_hi = q + 2.0 * p * np.cos(phi)
    lam_lo = q + 2.0 * p * np.cos(phi + 2.0 * np.pi / 3.0)
    lam_mid = 3.0 * q - lam_hi - lam_lo
    vals = np.stack([lam_lo, lam_mid, lam_hi], axis=-1)

    v_lo = _largest_cross(B - lam_lo[..., None, None] * np.eye(3))
    v_hi = _largest_cross(B - lam_hi[..., None, None] * np.eye(3))
    v_mid = np.cross(v_hi, v_lo)
    v_mid /= np.maximum(np.linalg.norm(v_mid, axis=-1, keepdims=True), 1e-300)
    V = np.stack([v_lo, v_mid, v_hi], axis=-1)
    V = np.where(ok[..., None, None], V, np.eye(3))
    return vals, V


def _jacobi(B, max_sweeps=50):
    A = np.array(B, dtype=float)
    V = np.eye(3)
    scale = max(np.linalg.norm(A), 1e-300)
    for _ in range(max_sweeps):
        off = np.sqrt(A[0, 1] ** 2 + A[0, 2] ** 2 + A[1, 2] ** 2)
        if off <= 1e-17 * scale:
            break
        for p, q in ((0, 1), (0, 2), (1, 2)):
            if A[p, q] == 0.0:
                continue
            theta = (A[q, q] - A[p, p]) / (2.0 * A[p, q])
            t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            G = np.eye(3)
            G[p, p] = G[q, q] = c
            G[p, q] = s
            G[q, p] = -s
            A = G.T @ A @ G
            V = V @ G
    vals = np.diag(A).copy()
    order = np.argsort(vals)
    return vals[order], V[:, order]


def sym_eigen(B, tol=1e-13):
    """Eigenvalues (ascending) and a right-handed orthonormal eigenbasis.

    Closed-form Cardano roots with cross-product eigenvectors; entries whose
    residual exceeds ``tol * |B|`` (clustered spectra) are redone by cyclic
    Jacobi rotations.  Columns of the returned matrix are the eigenvectors and
    its determinant is +1.
    """
    B = sym(np.asarray(B, dtype=float))
    vals, V = _cardano(B)
    scale = np.maximum(norm(B), 1e-300)
    resid = norm(B @ V - V * vals[..., None, :]) / scale
    ortho = norm(T(V) @ V - np.eye(3))
    bad = (resid > tol) | (ortho > tol) | ~np.isfinite(resid)
    if np.any(bad):
        flat_B = B.reshape(-1, 3, 3)
        flat_vals = vals.reshape(-1, 3)
        flat_V = V.reshape(-1, 3, 3)
        for k in np.flatnonzero(bad.reshape(-1)):
            flat_vals[k], flat_V[k] = _jacobi(flat_B[k])
        vals = flat_vals.reshape(vals.shape)
        V = flat_V.reshape(V.shape)
    flip = det(V) < 0
    V[..., :, 2] = np.where(flip[..., None], -V[..., :, 2], V[..., :, 2])
    return vals, V


def heat_signature(B, K, distinctness_tol=DISTINCTNESS_TOL):
    """Sign of ``prod_i K . v_i`` over a right-handed ascending eigenbasis of ``B``.

    Returns 0 when two eigenvalues are within ``distinctness_tol * |B|`` of
    each other, and treats ``|K . v_i| <= distinctness_tol * |K|`` as an exact
    zero.  Raises :class:`NotPositiveDefinite` if ``B`` is not SPD.
    """
    B = np.asarray(B, dtype=float)
    K = np.asarray(K, dtype=float)
    vals, V = sym_eigen(B)
    if np.any(~(vals[..., 0] > 0)):
        raise NotPositiveDefinite("B must be symmetric positive definite")
    gap = np.minimum(vals[..., 1] - vals[..., 0], vals[..., 2] - vals[..., 1])
    distinct = gap > distinctness_tol * norm(B)
    comps = np.einsum("...i,...ij->...j", K, V)
    kn = np.linalg.norm(K, axis=-1)[..., None]
    comps = np.where(np.abs(comps) <= distinctness_tol * kn, 0.0, comps)
    s = np.sign(np.prod(comps, axis=-1)).astype(int)
    s = np.where(distinct, s, 0)
    return s if s.ndim else int(s)
