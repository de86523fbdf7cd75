"""Wavelet-side representation on the Euclidean region.

Labels are complex four-vectors z = (x1, x2, x3, i s) with real position and
purely imaginary time, s != 0.  A ``EuclideanGrid`` is a weighted node set
approximating d^3x ds over that region, and ``EuclideanSamples`` holds one
complex 3-vector per node.  The sign of s selects the helicity.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_legendre

from .analytic import ast_fourier
from .core import as_four, sphere_rule
from .fourier import ConeCoefficients
from .helicity import apply_pi
from .kernel import k_apply, k_kernel, l_apply, wavelet_apply, wavelet_matrix

PAIR_BUDGET = 1_500_000  # label pairs evaluated per block


def _digest(obj) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


@dataclass(frozen=True)
class EuclideanGrid:
    labels: np.ndarray
    weights: np.ndarray
    manifest: dict = field(default_factory=dict)

    def __post_init__(self):
        labels = as_four(np.asarray(self.labels, dtype=complex)).reshape(-1, 4)
        weights = np.asarray(self.weights, dtype=float).ravel()
        if len(labels) != len(weights):
            raise ValueError("labels and weights differ in length")
        if np.any(labels[:, 3].imag == 0) or np.any(labels[:, 3].real != 0):
            raise ValueError("labels need purely imaginary, nonzero time")
        if np.any(labels[:, :3].imag != 0):
            raise ValueError("label positions must be real")
        if np.any(~(weights > 0)) or not np.all(np.isfinite(weights)):
            raise ValueError("weights must be positive and finite")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return len(self.weights)

    @property
    def s(self) -> np.ndarray:
        return self.labels[:, 3].imag

    @property
    def x(self) -> np.ndarray:
        return self.labels[:, :3].real

    @property
    def digest(self) -> str:
        if not self.manifest:
            return hashlib.sha256(self.labels.tobytes() + self.weights.tobytes()).hexdigest()
        return _digest(self.manifest)

    def interior_mask(self, s_lo: float, s_hi: float, radius_factor: float,
                      s_ref: float | None = None) -> np.ndarray:
        """Nodes with s_lo <= |s| <= s_hi and |x| <= radius_factor (|s| + s_ref)."""
        s_ref = self.manifest.get("s_ref", 1.0) if s_ref is None else s_ref
        a = np.abs(self.s)
        r = np.linalg.norm(self.x, axis=1)
        return (a >= s_lo) & (a <= s_hi) & (r <= radius_factor * (a + s_ref))


def scale_nodes(count: int, s_ref: float):
    """Gauss-Legendre in t on (0, 1) mapped to s = s_ref t / (1 - t)."""
    x, w = roots_legendre(count)
    t = 0.5 * (x + 1)
    return s_ref * t / (1 - t), 0.5 * w * s_ref / (1 - t) ** 2


def _with_branches(labels, weights, both_branches):
    if not both_branches:
        return labels, weights
    mirror = labels.copy()
    mirror[:, 3] = -mirror[:, 3]
    return np.concatenate([labels, mirror]), np.concatenate([weights, weights])


def _cube(half_width, count):
    xs = np.linspace(-half_width, half_width, count)
    h = xs[1] - xs[0]
    wx = np.full(count, h)
    wx[0] = wx[-1] = h / 2
    pts = np.stack(np.meshgrid(xs, xs, xs, indexing="ij"), axis=-1).reshape(-1, 3)
    wts = (wx[:, None, None] * wx[None, :, None] * wx[None, None, :]).ravel()
    return pts, wts


def lattice_grid(s_count: int = 8, x_count: int = 16, box_factor: float = 4.0,
                 s_ref: float = 1.0, both_branches: bool = True) -> EuclideanGrid:
    """Scale-adapted lattice: each scale level s gets its own trapezoid cube
    of half-width box_factor (s + s_ref) with x_count points per axis.

    s_ref is the smallest scale present in the analysed field.
    """
    if s_count < 1 or x_count < 2 or box_factor <= 0 or s_ref <= 0:
        raise ValueError("invalid lattice parameters")
    s, ws = scale_nodes(s_count, s_ref)
    labels, weights = [], []
    for sk, wk in zip(s, ws):
        pts, wts = _cube(box_factor * (sk + s_ref), x_count)
        labels.append(np.concatenate([pts, np.full((len(pts), 1), 1j * sk)], axis=1))
        weights.append(wk * wts)
    labels, weights = _with_branches(np.concatenate(labels), np.concatenate(weights),
                                     both_branches)
    manifest = {"kind": "lattice", "s_count": int(s_count), "x_count": int(x_count),
                "box_factor": float(box_factor), "s_ref": float(s_ref),
                "both_branches": bool(both_branches)}
    return EuclideanGrid(labels, weights, manifest)


def log_grid(box: float = 6.0, s_min: float = 0.25, s_max: float = 4.0, s_count: int = 8,
             x_count: int = 16, s_ref: float = 1.0, both_branches: bool = True) -> EuclideanGrid:
    """Fixed cube [-box, box]^3 (times s_ref) with log-spaced scale levels.

    Kept for comparison: it truncates the scale integral at both ends."""
    if s_count < 2 or x_count < 2:
        raise ValueError("invalid grid parameters")
    u, wu = roots_legendre(s_count)
    lo, hi = np.log(s_min * s_ref), np.log(s_max * s_ref)
    logs = 0.5 * (hi - lo) * u + 0.5 * (hi + lo)
    s = np.exp(logs)
    ws = 0.5 * (hi - lo) * wu * s
    pts, wts = _cube(box * s_ref, x_count)
    labels = np.concatenate([np.concatenate([pts, np.full((len(pts), 1), 1j * sk)], axis=1)
                             for sk in s])
    weights = np.concatenate([wk * wts for wk in ws])
    labels, weights = _with_branches(labels, weights, both_branches)
    manifest = {"kind": "log", "box": float(box), "s_min": float(s_min), "s_max": float(s_max),
                "s_count": int(s_count), "x_count": int(x_count), "s_ref": float(s_ref),
                "both_branches": bool(both_branches)}
    return EuclideanGrid(labels, weights, manifest)


def _radial_rule(s, reach, t_abs, order, ratio, lo=1e-2, hi=60.0):
    """Composite Gauss-Legendre in the distance from the probe, with geometric
    panels from lo*s outward and extra panels clustered at the light-cone
    shell r = |t'| where wavelets seen from the probe are sharp."""
    inner, outer = lo * s, hi * (reach + t_abs)
    count = int(np.ceil(np.log(outer / inner) / np.log(ratio))) + 1
    gaps = np.geomspace(inner, outer, count)
    edges = list(gaps)
    if t_abs > 0:
        edges += [t_abs] + list(t_abs + gaps) + list(t_abs - gaps[gaps < t_abs])
    edges = np.unique(np.clip(edges, inner, outer))
    keep = [edges[0]]
    for e in edges[1:]:
        if e - keep[-1] > 1e-3 * inner:
            keep.append(e)
    edges = np.array(keep)
    x, w = roots_legendre(order)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    return (mid + half * x).ravel(), (half * w).ravel()


def focused_grid(probe, s_count: int = 12, angular_count: int = 8, radial_order: int = 6,
                 s_ref: float = 1.0, ratio: float = 3.0,
                 both_branches: bool = True) -> EuclideanGrid:
    """Spherical grid centred on the spatial position of a probe point.

    Suited to evaluating the synthesis sum at that one probe: every scale
    level is resolved down to 1% of s around the probe, where the wavelets
    Psi_{x, is}(x') are most concentrated.
    """
    probe = np.asarray(probe, dtype=float)
    s, ws = scale_nodes(s_count, s_ref)
    n, wn = sphere_rule(angular_count)
    t_abs = abs(float(probe[3]))
    labels, weights = [], []
    for sk, wk in zip(s, ws):
        r, wr = _radial_rule(sk, sk + s_ref, t_abs, radial_order, ratio)
        pts = probe[None, None, :3] + r[:, None, None] * n[None, :, :]
        labels.append(np.concatenate([pts.reshape(-1, 3),
                                      np.full((pts.shape[0] * pts.shape[1], 1), 1j * sk)],
                                     axis=1))
        weights.append(wk * ((wr * r ** 2)[:, None] * wn[None, :]).ravel())
    labels, weights = _with_branches(np.concatenate(labels), np.concatenate(weights),
                                     both_branches)
    manifest = {"kind": "focused", "probe": [float(c) for c in probe],
                "s_count": int(s_count), "angular_count": int(angular_count),
                "radial_order": int(radial_order), "s_ref": float(s_ref),
                "ratio": float(ratio), "both_branches": bool(both_branches)}
    return EuclideanGrid(labels, weights, manifest)


def explicit_grid(rows, weights) -> EuclideanGrid:
    """Grid from rows (x1, x2, x3, s) and their weights."""
    rows = np.asarray(rows, dtype=float).reshape(-1, 4)
    labels = rows[:, :3] + 0j
    labels = np.concatenate([labels, 1j * rows[:, 3:]], axis=1)
    manifest = {"kind": "explicit", "labels": rows.tolist(),
                "weights": [float(w) for w in np.ravel(weights)]}
    return EuclideanGrid(labels, weights, manifest)


def grid_from_manifest(manifest: dict) -> EuclideanGrid:
    params = dict(manifest)
    kind = params.pop("kind")
    if kind == "explicit":
        return explicit_grid(params["labels"], params["weights"])
    builders = {"lattice": lattice_grid, "log": log_grid, "focused": focused_grid}
    if kind not in builders:
        raise ValueError(f"cannot rebuild a grid of kind {kind!r} from parameters")
    return builders[kind](**params)


@dataclass(frozen=True)
class EuclideanSamples:
    grid: EuclideanGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != (len(self.grid), 3):
            raise ValueError(f"values must have shape ({len(self.grid)}, 3)")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", vals)

    def restricted(self, mask) -> "EuclideanSamples":
        """Zero the values outside ``mask``."""
        return EuclideanSamples(self.grid, np.where(np.asarray(mask)[:, None], self.values, 0))


def inner_E(phi: EuclideanSamples, psi: EuclideanSamples, mask=None) -> complex:
    """Weighted sum of conj(phi) . psi over the nodes (optionally a subset)."""
    if phi.grid.digest != psi.grid.digest:
        raise ValueError("samples live on different grids")
    terms = phi.grid.weights * np.sum(np.conj(phi.values) * psi.values, axis=1)
    if mask is not None:
        terms = terms[mask]
    return complex(np.sum(terms))


def norm_E(phi: EuclideanSamples, mask=None) -> float:
    return float(np.sqrt(inner_E(phi, phi, mask).real))


@dataclass(frozen=True)
class WaveletSuperposition:
    """The solution F = sum_j Psi_{z_j} u_j.

    Its extension, norm and pointwise values all have closed forms in terms
    of the kernel, which makes it a convenient analytic test field.
    """
    labels: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        labels = as_four(np.asarray(self.labels, dtype=complex)).reshape(-1, 4)
        vectors = np.asarray(self.vectors, dtype=complex).reshape(-1, 3)
        if len(labels) != len(vectors):
            raise ValueError("one vector per label is required")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "vectors", vectors)

    def extension(self, z) -> np.ndarray:
        z = as_four(np.asarray(z, dtype=complex))
        out = 0
        for zj, uj in zip(self.labels, self.vectors):
            out = out + k_apply(z, zj, np.broadcast_to(uj, z.shape[:-1] + (3,)))
        return out

    def field(self, x) -> np.ndarray:
        x = as_four(np.asarray(x, dtype=float))
        out = 0
        for zj, uj in zip(self.labels, self.vectors):
            out = out + wavelet_apply(zj, x, np.broadcast_to(uj, x.shape[:-1] + (3,)))
        return out

    def inner(self, other: "WaveletSuperposition") -> complex:
        gram = k_kernel(self.labels[:, None, :], other.labels[None, :, :])
        return complex(np.einsum("ja,jkab,kb->", np.conj(self.vectors), gram, other.vectors))

    def norm_sq(self) -> float:
        return self.inner(self).real

    def coefficients(self, quadrature) -> ConeCoefficients:
        """Samples of f(p) = sum_j 2 p0^2 theta(p.y_j) exp(-i p.conj z_j) Pi(p) u_j."""
        p = quadrature.momenta
        p0 = p[:, 3]
        vals = np.zeros((len(p), 3), dtype=complex)
        for zj, uj in zip(self.labels, self.vectors):
            zb = np.conj(zj)
            pz = p0 * zb[3] - p[:, :3] @ zb[:3]
            py = p0 * zj[3].imag - p[:, :3] @ zj[:3].imag
            amp = np.where(py > 0, 2 * p0 ** 2 * np.exp(-1j * pz), 0)
            vals += amp[:, None] * uj
        return ConeCoefficients(quadrature, apply_pi(p, vals), projected=True)


def restrict_R_E(f, grid: EuclideanGrid, chunk: int = 2048) -> EuclideanSamples:
    """Sample the extended field at every grid label.

    ``f`` is either cone coefficients (evaluated by quadrature) or a
    ``WaveletSuperposition`` (evaluated in closed form).
    """
    if isinstance(f, WaveletSuperposition):
        return EuclideanSamples(grid, f.extension(grid.labels))
    out = np.empty((len(grid), 3), dtype=complex)
    for i in range(0, len(grid), chunk):
        out[i:i + chunk] = ast_fourier(f, grid.labels[i:i + chunk])
    return EuclideanSamples(grid, out)


def _pair_sum(targets, sources, src_vals, fn) -> np.ndarray:
    """sum_j fn(target_i, source_j, src_vals_j) for every target, in blocks."""
    targets = np.asarray(targets)
    flat = targets.reshape(-1, 4)
    out = np.zeros((len(flat), 3), dtype=complex)
    if len(sources) == 0:
        return out.reshape(targets.shape[:-1] + (3,))
    step = max(1, PAIR_BUDGET // len(sources))
    for i in range(0, len(flat), step):
        blk = flat[i:i + step, None, :]
        out[i:i + step] = np.sum(fn(blk, sources[None, :, :], src_vals[None, :, :]), axis=1)
    return out.reshape(targets.shape[:-1] + (3,))


def _active(phi: EuclideanSamples):
    weighted = phi.grid.weights[:, None] * phi.values
    nz = np.any(weighted != 0, axis=1)
    return phi.grid.labels[nz], weighted[nz]


def construct_R_E_star(phi: EuclideanSamples, xp) -> np.ndarray:
    """sum over nodes of weight * Psi_{x, is}(x') Phi(x, is); x' may be an
    array of points (..., 4)."""
    labels, weighted = _active(phi)
    xp = np.asarray(xp, dtype=float)
    return _pair_sum(xp, labels, weighted,
                     lambda t, src, v: 0.5 * l_apply(t - np.conj(src), v))


def reproduce_at(phi: EuclideanSamples, zp) -> np.ndarray:
    """sum over nodes of weight * K(z'|x, -is) Phi(x, is)."""
    labels, weighted = _active(phi)
    return _pair_sum(np.asarray(zp, dtype=complex), labels, weighted, k_apply)


def project_P(phi: EuclideanSamples, mask=None) -> EuclideanSamples:
    """The kernel projection evaluated at every node, or only at the nodes in
    ``mask`` (the rest are left at zero)."""
    targets = phi.grid.labels if mask is None else phi.grid.labels[mask]
    vals = reproduce_at(phi, targets)
    if mask is None:
        return EuclideanSamples(phi.grid, vals)
    out = np.zeros((len(phi.grid), 3), dtype=complex)
    out[mask] = vals
    return EuclideanSamples(phi.grid, out)


def scalar_reconstruct(phi: EuclideanSamples, xp) -> np.ndarray:
    """Synthesis with the trace of the wavelet acting componentwise.

    Only valid for samples in the range of restrict_R_E."""
    labels, weighted = _active(phi)
    xp = np.asarray(xp, dtype=float)

    def term(t, src, v):
        tr = np.trace(wavelet_matrix(src, t), axis1=-2, axis2=-1)
        return tr[..., None] * v
    return _pair_sum(xp, labels, weighted, term)
