"""Closed forms for the wavelet family: the scalar potential S(y) and its
Hessian, the matrix function L(w), the reproducing kernel, the wavelets
themselves, the mother wavelet and their scalar (trace) versions.

Arguments are stored four-vectors (x1, x2, x3, x0), complex where the
formula allows it.  Everything broadcasts over leading axes.
"""
from __future__ import annotations

import numpy as np

from .core import LEVI_CIVITA, as_four, causal_lambda, minkowski_dot, step

SINGULARITY_FLOOR = 1e-12


def _check_upper(y):
    y = as_four(np.asarray(y, dtype=float))
    lam = causal_lambda(y)
    if np.any(y[..., 3] <= 0):
        raise ValueError("y must lie in the future cone")
    return y, lam


def s_scalar(y):
    """1 / (2 pi^2 lambda(y)^2) for y in the future cone."""
    _, lam = _check_upper(y)
    return 1.0 / (2 * np.pi ** 2 * lam ** 2)


def s_hessian(y) -> np.ndarray:
    """Second derivatives of ``s_scalar`` as a 4x4 matrix.

    Indices follow the relativistic order (time, x1, x2, x3), lowered with
    diag(1, -1, -1, -1).  In that bookkeeping the lowered spatial
    components equal the stored ones while the differentiation variables
    are their negatives.
    """
    y, lam = _check_upper(y)
    cov = np.concatenate([y[..., 3:4], y[..., :3]], axis=-1)
    g = np.diag([1.0, -1.0, -1.0, -1.0])
    lam2 = (lam ** 2)[..., None, None]
    return (4 * cov[..., :, None] * cov[..., None, :] - g * lam2) / (np.pi ** 2 * lam2 ** 3)


def l_from_hessian(y) -> np.ndarray:
    """Assemble L(iy) from the Hessian:
    delta_mn S00 - S_mn + i eps_mnk S0k."""
    S = s_hessian(y)
    return (np.eye(3) * S[..., 0, 0][..., None, None] - S[..., 1:, 1:]
            + 1j * np.einsum("mnk,...k->...mn", LEVI_CIVITA, S[..., 0, 1:]))


def _denominator(w):
    ww = minkowski_dot(w, w)
    scale = np.sum(np.abs(w) ** 2, axis=-1)
    if np.any(np.abs(ww) <= SINGULARITY_FLOOR * scale):
        raise ValueError("argument lies on the complex light cone (w.w = 0)")
    return 2.0 / (np.pi ** 2 * ww ** 3)


def l_matrix(w) -> np.ndarray:
    """L(w), shape (..., 3, 3).

    The diagonal term uses the plain sum of squares w0^2 + w1^2 + w2^2 + w3^2
    of the complex components, not the Minkowski square."""
    w = as_four(np.asarray(w, dtype=complex))
    pref = _denominator(w)
    ws, w0 = w[..., :3], w[..., 3]
    sq = w0 ** 2 + np.sum(ws ** 2, axis=-1)
    m = (np.eye(3) * sq[..., None, None]
         - 2 * ws[..., :, None] * ws[..., None, :]
         + 2j * w0[..., None, None] * np.einsum("mnk,...k->...mn", LEVI_CIVITA, ws))
    return pref[..., None, None] * m


def l_apply(w, v) -> np.ndarray:
    """L(w) v without forming the 3x3 matrix."""
    w = as_four(np.asarray(w, dtype=complex))
    pref = _denominator(w)
    ws, w0 = w[..., :3], w[..., 3]
    sq = w0 ** 2 + np.sum(ws ** 2, axis=-1)
    out = (sq[..., None] * v - 2 * ws * np.sum(ws * v, axis=-1)[..., None]
           + 2j * w0[..., None] * np.cross(v, ws))
    return pref[..., None] * out


def _kernel_args(zp, z):
    zp = as_four(np.asarray(zp, dtype=complex))
    z = as_four(np.asarray(z, dtype=complex))
    theta = step(minkowski_dot(zp.imag, z.imag))
    w = zp - np.conj(z)
    # opposite branches: kernel vanishes, keep L finite there
    w = np.where((theta > 0)[..., None], w, np.array([0, 0, 0, 1j]))
    return theta, w


def k_kernel(zp, z) -> np.ndarray:
    """Reproducing kernel K(z'|conj z) = theta(y'.y) L(z' - conj z)."""
    theta, w = _kernel_args(zp, z)
    return theta[..., None, None] * l_matrix(w)


def k_apply(zp, z, v) -> np.ndarray:
    theta, w = _kernel_args(zp, z)
    return theta[..., None] * l_apply(w, v)


def wavelet_matrix(z, xp) -> np.ndarray:
    """Psi_z(x') = L(x' - conj z) / 2."""
    z = as_four(np.asarray(z, dtype=complex))
    return 0.5 * l_matrix(np.asarray(xp) - np.conj(z))


def wavelet_apply(z, xp, v) -> np.ndarray:
    z = as_four(np.asarray(z, dtype=complex))
    return 0.5 * l_apply(np.asarray(xp) - np.conj(z), v)


def mother_matrix(x) -> np.ndarray:
    """Matrix elements of the wavelet labelled (0, i) at a real point x."""
    x = as_four(np.asarray(x, dtype=float))
    xs = x[..., :3]
    t = x[..., 3] + 1j
    r2 = np.sum(xs ** 2, axis=-1)
    num = (np.eye(3) * (t ** 2 + r2)[..., None, None]
           - 2 * xs[..., :, None] * xs[..., None, :]
           + 2j * t[..., None, None] * np.einsum("mnk,...k->...mn", LEVI_CIVITA, xs))
    return num / (np.pi ** 2 * ((t ** 2 - r2) ** 3)[..., None, None])


def mother_scalar(r, t):
    """Trace of the mother wavelet as a function of radius and time."""
    r = np.asarray(r, dtype=float)
    tc = np.asarray(t, dtype=float) + 1j
    return (3 * tc ** 2 + r ** 2) / (np.pi ** 2 * (tc ** 2 - r ** 2) ** 3)


def scalar_wavelet(z, xp):
    return np.trace(wavelet_matrix(z, xp), axis1=-2, axis2=-1)


def scalar_kernel(zp, z):
    return np.trace(k_kernel(zp, z), axis1=-2, axis2=-1)
