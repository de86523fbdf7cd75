"""Space-time primitives: four-vectors, the Minkowski metric, cone and tube
membership, and the light-cone quadrature.

Four-vectors are stored as ``(x1, x2, x3, x0)``: spatial components first,
time last.  Every function that takes a four-vector also accepts a numpy
array with trailing dimension 4, so the same code runs on single points and
on whole grids.  Units have c = 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import roots_legendre

METRIC = np.diag([-1.0, -1.0, -1.0, 1.0])  # in storage order

LEVI_CIVITA = np.zeros((3, 3, 3))
LEVI_CIVITA[0, 1, 2] = LEVI_CIVITA[1, 2, 0] = LEVI_CIVITA[2, 0, 1] = 1.0
LEVI_CIVITA[0, 2, 1] = LEVI_CIVITA[2, 1, 0] = LEVI_CIVITA[1, 0, 2] = -1.0


def step(u):
    """Heaviside step with the value 1/2 at the origin."""
    return np.heaviside(u, 0.5)


def as_four(v) -> np.ndarray:
    a = np.asarray(v)
    if a.shape[-1] != 4:
        raise ValueError(f"expected trailing dimension 4, got shape {a.shape}")
    return a


def minkowski_dot(a, b):
    """a0*b0 - a.b for stored four-vectors (broadcasts over leading axes)."""
    a = as_four(a)
    b = as_four(b)
    return a[..., 3] * b[..., 3] - np.sum(a[..., :3] * b[..., :3], axis=-1)


def lorentz_square(x):
    return minkowski_dot(x, x)


@dataclass(frozen=True)
class FourVector:
    x1: float
    x2: float
    x3: float
    x0: float

    @classmethod
    def of(cls, v) -> "FourVector":
        v = as_four(v)
        return cls(*(float(c) for c in v))

    @property
    def spatial(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x1, self.x2, self.x3, self.x0], dtype=dtype)


@dataclass(frozen=True)
class CausalVector:
    """A point of the open double cone y0^2 > |y|^2."""
    y: FourVector

    def __post_init__(self):
        if not lorentz_square(np.asarray(self.y)) > 0:
            raise ValueError("causal vector needs y0^2 - |y|^2 > 0")

    @classmethod
    def of(cls, v) -> "CausalVector":
        return cls(FourVector.of(v))

    @property
    def lam(self) -> float:
        return float(np.sqrt(lorentz_square(np.asarray(self.y))))

    @property
    def helicity_sign(self) -> int:
        return 1 if self.y.x0 > 0 else -1

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.y, dtype=dtype)


def causal_lambda(y):
    """sqrt(y0^2 - |y|^2); raises unless every y is strictly causal."""
    sq = lorentz_square(y)
    if np.any(~(sq > 0)):
        raise ValueError("imaginary part must satisfy y0^2 - |y|^2 > 0")
    return np.sqrt(sq)


class TubeBranch(Enum):
    FUTURE = "T+"
    PAST = "T-"
    OUTSIDE = "outside"


def in_tube(z) -> TubeBranch:
    y = np.imag(as_four(np.asarray(z, dtype=complex)))
    r = np.linalg.norm(y[:3])
    if y[3] > r:
        return TubeBranch.FUTURE
    if -y[3] > r:
        return TubeBranch.PAST
    return TubeBranch.OUTSIDE


def tube_branch(z):
    """Vectorized version of ``in_tube``: +1, -1 or 0 per point."""
    y = np.imag(as_four(np.asarray(z, dtype=complex)))
    r = np.linalg.norm(y[..., :3], axis=-1)
    return np.where(y[..., 3] > r, 1, np.where(-y[..., 3] > r, -1, 0))


@dataclass(frozen=True)
class TubePoint:
    x: FourVector
    y: CausalVector

    @classmethod
    def of(cls, z) -> "TubePoint":
        z = as_four(np.asarray(z, dtype=complex))
        return cls(FourVector.of(z.real), CausalVector.of(z.imag))

    @property
    def branch(self) -> int:
        return self.y.helicity_sign

    def __array__(self, dtype=None, copy=None):
        z = np.asarray(self.x, dtype=float) + 1j * np.asarray(self.y, dtype=float)
        return z if dtype is None else z.astype(dtype)


@dataclass(frozen=True)
class LightConeMomentum:
    p: tuple
    p0: float

    def __post_init__(self):
        k = float(np.linalg.norm(self.p))
        if k == 0:
            raise ValueError("the cone tip p = 0 is excluded")
        if not np.isclose(abs(self.p0), k, rtol=1e-12, atol=0):
            raise ValueError("momentum must satisfy p0 = +-|p|")

    @classmethod
    def of(cls, v) -> "LightConeMomentum":
        v = as_four(v)
        return cls(tuple(float(c) for c in v[:3]), float(v[3]))

    @property
    def branch(self) -> int:
        return 1 if self.p0 > 0 else -1

    def __array__(self, dtype=None, copy=None):
        return np.array([*self.p, self.p0], dtype=dtype)


@dataclass(frozen=True)
class ConeQuadrature:
    """Product rule on the two-sheeted light cone.

    ``momenta`` has shape (N, 4).  The first half of the rows lies on the
    future sheet and the second half is its exact negation, row by row.
    ``weights`` already contain the invariant measure.
    """
    momenta: np.ndarray
    weights: np.ndarray
    radial_count: int
    angular_count: int
    omega_max: float
    scale_hint: float
    manifest: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.weights)

    @property
    def nodes(self) -> list:
        return [LightConeMomentum.of(p) for p in self.momenta]

    @property
    def branch(self) -> np.ndarray:
        return np.sign(self.momenta[:, 3]).astype(int)

    def same_as(self, other: "ConeQuadrature") -> bool:
        return self is other or (
            self.momenta.shape == other.momenta.shape
            and np.array_equal(self.momenta, other.momenta)
            and np.array_equal(self.weights, other.weights))


def radial_map(radial_count: int, omega_max: float, scale_hint: float):
    """Gauss-Legendre rule in u on (0, 1) pushed through
    omega = W (e^{b u} - 1) / (e^b - 1), which packs nodes toward small
    frequencies where e^{-omega * scale_hint} is still large."""
    x, w = roots_legendre(radial_count)
    u = 0.5 * (x + 1.0)
    wu = 0.5 * w
    beta = float(np.log1p(omega_max * scale_hint / 8.0))
    if beta < 1e-8:
        return omega_max * u, omega_max * wu
    scale = omega_max / np.expm1(beta)
    omega = scale * np.expm1(beta * u)
    return omega, wu * scale * beta * np.exp(beta * u)


def sphere_rule(angular_count: int):
    """Gauss-Legendre in cos(theta) times a uniform rule in phi.

    Returns unit vectors (M, 3) and weights summing to 4*pi."""
    mu, wmu = roots_legendre(angular_count)
    nphi = 2 * angular_count
    phi = (np.arange(nphi) + 0.5) * (2 * np.pi / nphi)
    st = np.sqrt(1.0 - mu ** 2)
    n = np.stack([st[:, None] * np.cos(phi)[None, :],
                  st[:, None] * np.sin(phi)[None, :],
                  np.broadcast_to(mu[:, None], (angular_count, nphi))], axis=-1)
    wts = wmu[:, None] * np.full(nphi, 2 * np.pi / nphi)[None, :]
    return n.reshape(-1, 3), wts.ravel()


def build_cone_quadrature(radial_count: int, angular_count: int,
                          omega_max: float, scale_hint: float = 1.0) -> ConeQuadrature:
    """Quadrature for integrals over the light cone with the invariant measure
    (2 pi)^-3 d^3p / (2|p0|).

    Parameters
    ----------
    radial_count, angular_count : int
        Radial Gauss-Legendre order and polar order (the azimuth gets twice
        as many uniform points).
    omega_max : float
        Frequency cutoff.
    scale_hint : float
        Smallest imaginary-time scale the caller will damp with.
    """
    if int(radial_count) < 1 or int(angular_count) < 1:
        raise ValueError("radial_count and angular_count must be >= 1")
    if not (omega_max > 0 and scale_hint > 0):
        raise ValueError("omega_max and scale_hint must be positive")
    radial_count, angular_count = int(radial_count), int(angular_count)
    omega, wr = radial_map(radial_count, float(omega_max), float(scale_hint))
    if angular_count == 1:
        n, wa = np.array([[0.0, 0.0, 1.0]]), np.array([4 * np.pi])
    else:
        n, wa = sphere_rule(angular_count)
    p = (omega[:, None, None] * n[None, :, :]).reshape(-1, 3)
    om = np.repeat(omega, len(wa))
    w = (wr[:, None] * wa[None, :]).ravel() * om ** 2 / ((2 * np.pi) ** 3 * 2 * om)
    plus = np.concatenate([p, om[:, None]], axis=1)
    momenta = np.concatenate([plus, -plus])
    weights = np.concatenate([w, w])
    manifest = {"radial": radial_count, "angular": angular_count,
                "omega_max": float(omega_max), "scale_hint": float(scale_hint)}
    return ConeQuadrature(momenta, weights, radial_count, angular_count,
                          float(omega_max), float(scale_hint), manifest)
