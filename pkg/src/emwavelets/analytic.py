"""Analytic-signal transform: extension of fields to complex arguments.

Two routes are provided.  The spectral route multiplies each Fourier
component by 2 theta(p.y) exp(-p.y), which is exact for sampled spectra.  The
line route integrates (1/(pi i)) dtau / (tau - i) F(x + tau y) along a real
line and is kept as a slow, independent check.  The directional Hilbert
transform uses the same line quadrature.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import roots_legendre

from .core import as_four, step, tube_branch
from .fourier import ConeCoefficients, phase_sum


@dataclass(frozen=True)
class LineQuadrature:
    """Symmetric rule on [-tau_max, tau_max] that never samples tau = 0."""
    tau_nodes: np.ndarray
    tau_weights: np.ndarray
    tau_max: float

    @property
    def tail_estimate(self) -> float:
        # size of the neglected 1/tau tail for a bounded, oscillating integrand
        return 2.0 / (np.pi * self.tau_max)


def line_quadrature(tau_max: float = 1e4, panel_width: float = 0.5,
                    order: int = 8) -> LineQuadrature:
    """Composite Gauss-Legendre panels of equal width on (0, tau_max],
    mirrored to the negative axis.

    The panel width must resolve the integrand's oscillation along the line.
    """
    if not (tau_max > 0 and panel_width > 0 and order >= 1):
        raise ValueError("tau_max, panel_width and order must be positive")
    npanel = int(np.ceil(tau_max / panel_width))
    edges = np.linspace(0.0, tau_max, npanel + 1)
    x, w = roots_legendre(order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    return LineQuadrature(np.concatenate([-t[::-1], t]),
                          np.concatenate([wt[::-1], wt]), float(tau_max))


def _line_points(x, y, q):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if not np.any(y != 0):
        raise ValueError("direction y must be nonzero")
    return x[None, ...] + q.tau_nodes.reshape((-1,) + (1,) * x.ndim) * y[None, ...]


def ast_line(F, x, y, q: LineQuadrature) -> np.ndarray:
    """(1/(pi i)) integral dtau / (tau - i) F(x + tau y).

    ``F`` takes an array of points (N, n) (or (N,) when n = 1) and returns
    (N,) or (N, m) values; it must be safe to call concurrently.
    """
    vals = np.asarray(F(_line_points(x, y, q)))
    kern = q.tau_weights / (q.tau_nodes - 1j) / (np.pi * 1j)
    return np.tensordot(kern, vals, axes=(0, 0))


def hilbert_directional(F, x, y, q: LineQuadrature) -> np.ndarray:
    """Principal value (1/pi) integral dtau / tau F(x - tau y).

    Nodes come in exact +-tau pairs, so the odd singular part cancels."""
    vals = np.asarray(F(_line_points(x, -np.asarray(y, dtype=float), q)))
    kern = q.tau_weights / q.tau_nodes / np.pi
    return np.tensordot(kern, vals, axes=(0, 0))


def ast_spectral(frequencies, amplitudes, x, y) -> np.ndarray:
    """Extension of F(x) = sum_k a_k exp(i k.x) on R^n (Euclidean dot):
    sum_k 2 theta(k.y) exp(i k.(x + i y)) a_k."""
    k = np.atleast_2d(np.asarray(frequencies, dtype=float))
    if k.shape[0] == 1 and np.ndim(frequencies) == 1:
        k = k.T
    a = np.asarray(amplitudes, dtype=complex)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    ky = k @ y
    phase = 1j * (k @ x) - ky
    coef = 2 * step(ky) * np.exp(phase)
    return np.tensordot(coef, a, axes=(0, 0))


def ast_fourier(f: ConeCoefficients, z) -> np.ndarray:
    """Extended field at tube points z:
    sum_j w_j 2 theta(p_j.y) exp(i p_j.z) Pi(p_j) f(p_j)."""
    z = as_four(np.asarray(z, dtype=complex))
    if np.any(tube_branch(z) == 0):
        raise ValueError("z must lie in the tube y0^2 > |y|^2")
    q = f.quadrature
    pf = q.weights[:, None] * f.projected_values()
    flat = z.reshape(-1, 4)
    y = flat.imag
    out = np.zeros((len(flat), 3), dtype=complex)
    # z in one tube half only sees the matching sheet of the cone
    for sign in (1, -1):
        rows = np.flatnonzero(np.sign(y[:, 3]) == sign)
        if len(rows) == 0:
            continue
        # p.y > 0 for every p on this sheet, so theta = 1 there and 0 elsewhere
        sheet = np.flatnonzero(q.branch == sign)
        out[rows] = 2 * phase_sum(q.momenta[sheet], pf[sheet], flat[rows])
    return out.reshape(z.shape[:-1] + (3,))
