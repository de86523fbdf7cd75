"""Transport of wavelet labels under translations, dilations, rotations and
Lorentz boosts.

Only labels move here.  How wavelet values transform under a boost is not
modelled, so boosted grids are for inspection rather than reconstruction.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .atoms import EuclideanGrid
from .core import as_four, causal_lambda


def boost_matrix(velocity) -> np.ndarray:
    """Standard pure boost acting on stored (x1, x2, x3, x0) vectors.

    A point at rest in the original frame ends up moving with ``velocity``.
    """
    v = np.asarray(velocity, dtype=float)
    b2 = float(v @ v)
    if not b2 < 1:
        raise ValueError("boost speed must be below 1")
    gam = 1.0 / np.sqrt(1.0 - b2)
    m = np.eye(4)
    if b2 > 0:
        m[:3, :3] += (gam - 1.0) * np.outer(v, v) / b2
    m[:3, 3] = gam * v
    m[3, :3] = gam * v
    m[3, 3] = gam
    return m


@dataclass(frozen=True)
class Boost:
    velocity: tuple

    def __post_init__(self):
        object.__setattr__(self, "velocity", tuple(float(c) for c in self.velocity))
        boost_matrix(self.velocity)

    @property
    def matrix(self) -> np.ndarray:
        return boost_matrix(self.velocity)

    def inverse(self) -> "Boost":
        return Boost(tuple(-c for c in self.velocity))

    def apply(self, v) -> np.ndarray:
        return np.asarray(v) @ self.matrix.T


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation about ``axis`` by ``angle`` radians."""
    a = np.asarray(axis, dtype=float)
    a = a / np.linalg.norm(a)
    k = np.array([[0, -a[2], a[1]], [a[2], 0, -a[0]], [-a[1], a[0], 0]])
    return np.eye(3) + np.sin(angle) * k + (1 - np.cos(angle)) * (k @ k)


def translate_label(z, a) -> np.ndarray:
    z = as_four(np.asarray(z, dtype=complex))
    return z + as_four(np.asarray(a, dtype=float))


def scale_label(z, a: float) -> np.ndarray:
    if not a > 0:
        raise ValueError("scale factor must be positive")
    return as_four(np.asarray(z, dtype=complex)) * a


def rotate_label(z, rotation) -> np.ndarray:
    z = as_four(np.asarray(z, dtype=complex))
    out = z.copy()
    out[..., :3] = z[..., :3] @ np.asarray(rotation).T
    return out


def boost_label(z, b: Boost) -> np.ndarray:
    """Real and imaginary parts are boosted separately (the map is real-linear
    and the matrix is real)."""
    z = as_four(np.asarray(z, dtype=complex))
    return z @ b.matrix.T


def center_velocity(z) -> np.ndarray:
    y = np.imag(as_four(np.asarray(z, dtype=complex)))
    causal_lambda(y)
    return y[..., :3] / y[..., 3:4]


def label_scale_and_helicity(z):
    """(|s|, sign s) with s the imaginary time of the label."""
    s = np.imag(as_four(np.asarray(z, dtype=complex))[..., 3])
    return np.abs(s), np.sign(s).astype(int)


@dataclass(frozen=True)
class LabelSet:
    """Transformed labels with the weights carried over unchanged."""
    labels: np.ndarray
    weights: np.ndarray
    manifest: dict


def boost_grid(grid: EuclideanGrid, b: Boost) -> LabelSet:
    return LabelSet(boost_label(grid.labels, b), grid.weights.copy(),
                    {"source": grid.digest, "boost": list(b.velocity)})


def translate_grid(grid: EuclideanGrid, a) -> LabelSet:
    return LabelSet(translate_label(grid.labels, a), grid.weights.copy(),
                    {"source": grid.digest, "translate": [float(c) for c in a]})


def scale_grid(grid: EuclideanGrid, a: float) -> LabelSet:
    return LabelSet(scale_label(grid.labels, a), grid.weights * a ** 4,
                    {"source": grid.digest, "scale": float(a)})
