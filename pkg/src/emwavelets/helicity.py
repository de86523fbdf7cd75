"""Helicity operator Gamma(p), the positive-helicity projector Pi(p) and
plane-wave solutions.

All matrices are built in closed form from the momentum, never by an
eigensolver.  Functions broadcast over leading axes of ``p``.
"""
from __future__ import annotations

import numpy as np

from .core import LEVI_CIVITA, as_four

CONSTRAINT_TOL = 1e-10


def gamma_matrix(p) -> np.ndarray:
    """Gamma_mn = i/p0 * sum_k eps_mnk p_k, shape (..., 3, 3)."""
    p = as_four(np.asarray(p, dtype=float))
    v = p[..., :3] / p[..., 3:4]
    return 1j * np.einsum("mnk,...k->...mn", LEVI_CIVITA, v)


def pi_matrix(p) -> np.ndarray:
    """Projector onto the +1 eigenvector of Gamma(p):
    (p0^2 delta_mn - p_m p_n + i p0 eps_mnk p_k) / (2 p0^2)."""
    p = as_four(np.asarray(p, dtype=float))
    v = p[..., :3] / p[..., 3:4]
    out = np.eye(3) - v[..., :, None] * v[..., None, :]
    out = out + 1j * np.einsum("mnk,...k->...mn", LEVI_CIVITA, v)
    return 0.5 * out


def apply_pi(p, g) -> np.ndarray:
    """Pi(p) g without forming the matrix: (g - v(v.g) + i g x v) / 2,
    with v = p/p0 (for which i eps_mnk v_k g_n = i (g x v)_m)."""
    p = as_four(np.asarray(p, dtype=float))
    v = p[..., :3] / p[..., 3:4]
    g = np.asarray(g)
    vg = np.sum(v * g, axis=-1)[..., None]
    return 0.5 * (g - v * vg + 1j * np.cross(g, v))


def helicity_decompose(g, p):
    """Split g into Gamma eigencomponents (+1, 0, -1)."""
    p = as_four(np.asarray(p, dtype=float))
    g = np.asarray(g, dtype=complex)
    v = p[..., :3] / p[..., 3:4]
    gam = gamma_matrix(p)
    gam_g = np.einsum("...mn,...n->...m", gam, g)
    gam2_g = np.einsum("...mn,...n->...m", gam, gam_g)
    plus = 0.5 * (gam2_g + gam_g)
    zero = v * np.sum(v * g, axis=-1)[..., None]
    minus = 0.5 * (gam2_g - gam_g)
    return plus, zero, minus


def plane_wave_field(p, f0, x) -> np.ndarray:
    """F_p(x) = exp(i p.x) f0.  The real part is B, the imaginary part E.

    Raises if f0 is not a +1 eigenvector of Gamma(p) to within 1e-10."""
    p = as_four(np.asarray(p, dtype=float))
    f0 = np.asarray(f0, dtype=complex)
    if np.max(np.abs(apply_pi(p, f0) - f0)) > CONSTRAINT_TOL:
        raise ValueError("f0 violates the helicity constraint Pi(p) f0 = f0")
    x = as_four(np.asarray(x, dtype=float))
    phase = x[..., 3] * p[3] - x[..., :3] @ p[:3]
    return np.exp(1j * phase)[..., None] * f0


def handedness(p, f0, x) -> float:
    """det[p, E, B] for the plane wave at x (positive means right-handed)."""
    F = plane_wave_field(p, f0, x)
    return float(np.linalg.det(np.stack([np.asarray(p, float)[:3], F.imag, F.real])))
