"""Fourier-side representation of free Maxwell fields.

A solution is a set of coefficient vectors f(p), one per node of a
``ConeQuadrature``.  The field is F = B + iE with
F(x) = sum_j w_j exp(i p_j.x) Pi(p_j) f(p_j).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConeQuadrature, LEVI_CIVITA, as_four
from .helicity import apply_pi

PAIR_BUDGET = 2_000_000  # phase factors held in memory at once


@dataclass(frozen=True)
class ConeCoefficients:
    quadrature: ConeQuadrature
    values: np.ndarray
    projected: bool = False

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (len(self.quadrature), 3):
            raise ValueError(
                f"values must have shape ({len(self.quadrature)}, 3), got {vals.shape}")
        if self.projected:
            err = np.max(np.abs(apply_pi(self.quadrature.momenta, vals) - vals), initial=0.0)
            if err > 1e-10:
                raise ValueError("values flagged as projected are not Pi-invariant")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, quadrature: ConeQuadrature, fn, project: bool = True):
        """Sample ``fn(momenta) -> (N, 3)`` on the nodes, optionally projecting."""
        vals = np.asarray(fn(quadrature.momenta), dtype=complex)
        if project:
            vals = apply_pi(quadrature.momenta, vals)
        return cls(quadrature, vals, projected=project)

    def projected_values(self) -> np.ndarray:
        if self.projected:
            return self.values
        return apply_pi(self.quadrature.momenta, self.values)

    def restricted(self, branch: int) -> "ConeCoefficients":
        """Copy with the coefficients on the other sheet set to zero."""
        keep = (self.quadrature.branch == branch)[:, None]
        return ConeCoefficients(self.quadrature, np.where(keep, self.values, 0),
                                self.projected)

    def __add__(self, other: "ConeCoefficients") -> "ConeCoefficients":
        _check_same(self, other)
        return ConeCoefficients(self.quadrature, self.values + other.values,
                                self.projected and other.projected)


def _check_same(f: ConeCoefficients, g: ConeCoefficients):
    if not f.quadrature.same_as(g.quadrature):
        raise ValueError("coefficient sets live on different quadratures")


def phase_sum(momenta: np.ndarray, weighted: np.ndarray, z) -> np.ndarray:
    """sum_j weighted_j exp(i p_j.z) for every point z of shape (..., 4)."""
    z = as_four(np.asarray(z))
    flat = z.reshape(-1, 4)
    p = momenta
    # p.z with the metric folded into the momenta
    pm = np.concatenate([-p[:, :3], p[:, 3:]], axis=1)
    out = np.empty((len(flat), weighted.shape[-1]), dtype=complex)
    chunk = max(1, PAIR_BUDGET // max(1, len(p)))
    for i in range(0, len(flat), chunk):
        ph = np.exp(1j * (flat[i:i + chunk] @ pm.T))
        out[i:i + chunk] = ph @ weighted
    return out.reshape(z.shape[:-1] + (weighted.shape[-1],))


def synthesize_field(f: ConeCoefficients, x, projector: str = "positive") -> np.ndarray:
    """Quadrature of F(x); broadcasts over points x of shape (..., 4).

    ``projector`` selects what multiplies f(p): the helicity projector Pi(p)
    ("positive"), its complex conjugate ("negative"), or nothing ("none").
    Only the first produces solutions of dF/dt = i curl F.
    """
    x = np.asarray(x, dtype=float)
    if projector == "positive":
        vals = f.projected_values()
    elif projector == "negative":
        vals = np.conj(apply_pi(f.quadrature.momenta, np.conj(f.values)))
    elif projector == "none":
        vals = f.values
    else:
        raise ValueError(f"unknown projector {projector!r}")
    return phase_sum(f.quadrature.momenta, f.quadrature.weights[:, None] * vals, x)


def field_inner(f: ConeCoefficients, g: ConeCoefficients) -> complex:
    """sum_j w_j p0^-2 f_j^* Pi_j g_j."""
    _check_same(f, g)
    q = f.quadrature
    pg = apply_pi(q.momenta, g.values)
    return complex(np.sum(q.weights / q.momenta[:, 3] ** 2
                          * np.sum(np.conj(f.values) * pg, axis=-1)))


def field_norm_sq(f: ConeCoefficients) -> float:
    q = f.quadrature
    pf = f.projected_values()
    return float(np.sum(q.weights / q.momenta[:, 3] ** 2 * np.sum(np.abs(pf) ** 2, axis=-1)))


def coefficients_from_potential(quadrature: ConeQuadrature, a) -> ConeCoefficients:
    """f(p) = 2 p0 a(p), stored projected."""
    a = np.asarray(a, dtype=complex)
    f = 2 * quadrature.momenta[:, 3:4] * a
    return ConeCoefficients(quadrature, apply_pi(quadrature.momenta, f), projected=True)


def potential_norm_sq(quadrature: ConeQuadrature, a) -> float:
    """2 sum_j w_j (|a|^2 - |a0|^2) with a0 = v.a the implied scalar potential."""
    a = np.asarray(a, dtype=complex)
    v = quadrature.momenta[:, :3] / quadrature.momenta[:, 3:4]
    a0 = np.sum(v * a, axis=-1)
    return float(2 * np.sum(quadrature.weights
                            * (np.sum(np.abs(a) ** 2, axis=-1) - np.abs(a0) ** 2)))


def conjugate_partner(f: ConeCoefficients) -> ConeCoefficients:
    """g(p) = conj(f(-p)) node by node.

    conj(F) is not a positive-helicity solution: synthesizing g with the
    conjugate projector (``projector="negative"``) returns conj(F), while the
    positive projector annihilates the transverse part of g.  The quadrature
    stores -p at the mirrored row, so the lookup is a half swap.
    """
    q = f.quadrature
    half = len(q) // 2
    mirrored = np.concatenate([f.values[half:], f.values[:half]])
    return ConeCoefficients(q, np.conj(mirrored), projected=False)


def _gradients(F, x, h):
    x = np.asarray(x, dtype=float)
    d = []
    for k in range(4):
        e = np.zeros(4)
        e[k] = h
        d.append((np.asarray(F(x + e)) - np.asarray(F(x - e))) / (2 * h))
    return d


def maxwell_residual_callable(F, x, h: float = 1e-3, rows: bool = False) -> float:
    """Central-difference check of dF/dt = i curl F and div F = 0.

    ``F`` maps a four-vector to a 3-vector or a 3x3 matrix.  For a matrix the
    columns are tested, or with ``rows=True`` the rows, which obey the
    opposite-helicity equation dF/dt = -i curl F.
    """
    if not h > 0:
        raise ValueError("step h must be positive")
    d = _gradients(F, x, h)
    val = np.asarray(F(np.asarray(x, dtype=float)))
    dt = d[3]
    grad = np.stack(d[:3])  # (a, ...)
    if val.ndim == 1:
        curl = np.einsum("mab,ab->m", LEVI_CIVITA, grad)
        div = np.abs(np.einsum("aa->", grad))
        res = np.linalg.norm(dt - 1j * curl) + div
    elif rows:
        curl = np.einsum("nab,amb->mn", LEVI_CIVITA, grad)
        div = np.linalg.norm(np.einsum("ama->m", grad))
        res = np.linalg.norm(dt + 1j * curl) + div
    else:
        curl = np.einsum("mab,abn->mn", LEVI_CIVITA, grad)
        div = np.linalg.norm(np.einsum("aan->n", grad))
        res = np.linalg.norm(dt - 1j * curl) + div
    return float(res / (np.linalg.norm(val) + np.finfo(float).tiny))


def wave_residual_callable(F, x, h: float = 1e-3) -> float:
    """Central-difference d'Alembertian of F at x relative to |F(x)|."""
    x = np.asarray(x, dtype=float)
    val = np.asarray(F(x))
    box = np.zeros_like(val, dtype=complex)
    for k, sign in zip(range(4), (-1, -1, -1, 1)):
        e = np.zeros(4)
        e[k] = h
        box += sign * (np.asarray(F(x + e)) - 2 * val + np.asarray(F(x - e))) / h ** 2
    return float(np.linalg.norm(box) / (np.linalg.norm(val) + np.finfo(float).tiny))


def maxwell_residual(f: ConeCoefficients, x, h: float = 1e-3,
                     projector: str = "positive") -> float:
    return maxwell_residual_callable(lambda pt: synthesize_field(f, pt, projector), x, h)


def wave_residual(f: ConeCoefficients, x, h: float = 1e-3) -> float:
    return wave_residual_callable(lambda pt: synthesize_field(f, pt), x, h)
