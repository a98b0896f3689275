"""Point-cloud models of compact sets in C^d and geometric transforms on them.

Clouds discretize the boundary where polynomial sup norms live: product-of-disc
models are sampled on their product of boundary circles, the ellipsoid on its
full topological boundary, segments at cosine-clustered nodes (so that discrete
sup norms of degree-n polynomials track the continuum segment for n well below
the node count).  For circled models the mesh parameter is the angular step of
the phase grids; for segments it is the nominal point spacing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

DEFAULT_POINT_CAP = 1_000_000


class PointBudgetError(RuntimeError):
    """Raised when a sampler would exceed the configured point cap."""


@dataclass(frozen=True)
class PointCloud:
    """Finite sample of a compact set with per-point weights.

    points is an (N, d) complex array, weights an (N,) nonnegative array with
    at least one positive entry.  Arrays are frozen after construction; all
    transforms return new clouds.
    """

    points: np.ndarray
    weights: np.ndarray
    mesh: float
    circled: bool = False
    generator: str = ""

    def __post_init__(self):
        pts = np.array(self.points, dtype=complex, copy=True)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("cloud needs at least one point")
        w = np.array(self.weights, dtype=float, copy=True)
        if w.shape != (pts.shape[0],):
            raise ValueError("need exactly one weight per point")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if not np.any(w > 0):
            raise ValueError("at least one weight must be positive")
        if not (float(self.mesh) > 0):
            raise ValueError("mesh must be positive")
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "mesh", float(self.mesh))

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def with_unit_weights(self) -> "PointCloud":
        return PointCloud(self.points, np.ones(self.size), self.mesh, self.circled,
                          self.generator + "|unit-weights")

    def with_weights(self, weights) -> "PointCloud":
        return PointCloud(self.points, weights, self.mesh, self.circled,
                          self.generator + "|reweighted")


@dataclass(frozen=True)
class SetModel:
    """Description of a generatable set; use the class methods to build one."""

    kind: str
    params: dict = field(default_factory=dict)

    @classmethod
    def torus(cls, radii) -> "SetModel":
        r = tuple(float(x) for x in radii)
        if not r or any(x <= 0 for x in r):
            raise ValueError("torus radii must be positive")
        return cls("torus", {"radii": r})

    @classmethod
    def product_discs(cls, centers, radii) -> "SetModel":
        a = tuple(complex(x) for x in centers)
        r = tuple(float(x) for x in radii)
        if len(a) != len(r) or not r:
            raise ValueError("need one center per radius")
        if any(x <= 0 for x in r):
            raise ValueError("disc radii must be positive")
        return cls("product_discs", {"centers": a, "radii": r})

    @classmethod
    def ellipsoid(cls, A: float, r: float) -> "SetModel":
        if not (A > 0 and r > 0):
            raise ValueError("ellipsoid semi-axes must be positive")
        return cls("ellipsoid", {"A": float(A), "r": float(r)})

    @classmethod
    def zaharjuta_pluripolar(cls) -> "SetModel":
        return cls("zaharjuta_pluripolar", {})

    @classmethod
    def segment(cls, a, b) -> "SetModel":
        a, b = complex(a), complex(b)
        if a == b:
            raise ValueError("segment endpoints must differ")
        return cls("segment", {"a": a, "b": b})

    @classmethod
    def affine_image(cls, base: "SetModel", matrix, shift=None) -> "SetModel":
        m = np.asarray(matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("affine matrix must be square")
        if abs(np.linalg.det(m)) < 1e-14:
            raise ValueError("affine matrix must be invertible")
        s = np.zeros(m.shape[0], dtype=complex) if shift is None else np.asarray(shift, dtype=complex)
        return cls("affine_image", {"base": base, "matrix": m, "shift": s})


def _angle_count(h: float) -> int:
    return max(4, int(round(2 * math.pi / h)))


def _phase_grid(m: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(m) / m)


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise PointBudgetError(f"sampler would produce {count} points, cap is {cap}")


def generate(model: SetModel, h: float, cap: int = DEFAULT_POINT_CAP) -> PointCloud:
    """Sample a set model at resolution h into a PointCloud.

    Deterministic: identical (model, h) produce bit-identical clouds.
    """
    if not (h > 0):
        raise ValueError("resolution must be positive")
    kind = model.kind
    if kind == "torus":
        radii = model.params["radii"]
        m = _angle_count(h)
        _check_cap(m ** len(radii), cap)
        rings = [r * _phase_grid(m) for r in radii]
        grids = np.meshgrid(*rings, indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        return PointCloud(pts, np.ones(len(pts)), h, circled=True,
                          generator=f"torus(radii={radii},m={m})")
    if kind == "product_discs":
        centers, radii = model.params["centers"], model.params["radii"]
        m = _angle_count(h)
        _check_cap(m ** len(radii), cap)
        rings = [a + r * _phase_grid(m) for a, r in zip(centers, radii)]
        grids = np.meshgrid(*rings, indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=1)
        circled = all(a == 0 for a in centers)
        return PointCloud(pts, np.ones(len(pts)), h, circled=circled,
                          generator=f"product_discs(centers={centers},radii={radii},m={m})")
    if kind == "zaharjuta_pluripolar":
        # z2 identically 0; the boundary circle in z1 carries all sup norms
        m = _angle_count(h)
        _check_cap(m, cap)
        pts = np.stack([_phase_grid(m), np.zeros(m, dtype=complex)], axis=1)
        return PointCloud(pts, np.ones(m), h, circled=True,
                          generator=f"zaharjuta_pluripolar(m={m},z2=exact0)")
    if kind == "ellipsoid":
        A, r = model.params["A"], model.params["r"]
        m = _angle_count(h)
        n_lat = max(5, m // 4 + 1)
        psi = np.linspace(0.0, math.pi / 2, n_lat)
        blocks = []
        # poles: one phase collapses, sample the surviving circle only
        blocks.append(np.stack([r * _phase_grid(m), np.zeros(m, dtype=complex)], axis=1))
        blocks.append(np.stack([np.zeros(m, dtype=complex), A * _phase_grid(m)], axis=1))
        interior = psi[1:-1]
        _check_cap(2 * m + len(interior) * m * m, cap)
        if len(interior):
            ph1, ph2 = _phase_grid(m), _phase_grid(m)
            c1 = (r * np.cos(interior))[:, None, None] * ph1[None, :, None]
            c2 = (A * np.sin(interior))[:, None, None] * ph2[None, None, :]
            z1 = np.broadcast_to(c1, (len(interior), m, m)).ravel()
            z2 = np.broadcast_to(c2, (len(interior), m, m)).ravel()
            blocks.append(np.stack([z1, z2], axis=1))
        pts = np.concatenate(blocks, axis=0)
        return PointCloud(pts, np.ones(len(pts)), h, circled=True,
                          generator=f"ellipsoid(A={A},r={r},m={m},lat={n_lat})")
    if kind == "segment":
        a, b = model.params["a"], model.params["b"]
        length = abs(b - a)
        n = max(2, int(math.ceil(length / h)) + 1)
        _check_cap(n, cap)
        # cosine-clustered nodes: discrete sup norms of moderate-degree
        # polynomials then match the continuum segment to high accuracy
        t = np.cos(np.pi * np.arange(n) / (n - 1))
        mid, half = (a + b) / 2, (b - a) / 2
        pts = (mid + half * t)[:, None]
        return PointCloud(pts, np.ones(n), h, circled=False,
                          generator=f"segment(a={a},b={b},n={n})")
    if kind == "affine_image":
        base = generate(model.params["base"], h, cap)
        mat, shift = model.params["matrix"], model.params["shift"]
        if mat.shape[0] != base.dim:
            raise ValueError("affine matrix dimension does not match the base model")
        pts = base.points @ mat.T + shift
        circled = base.circled and not np.any(shift)
        scale = float(np.linalg.norm(mat, 2))
        return PointCloud(pts, base.weights, h * scale, circled=circled,
                          generator=f"affine({base.generator})")
    raise ValueError(f"unknown set model kind: {kind!r}")


def scale(cloud: PointCloud, eps: float) -> PointCloud:
    """Shrink a cloud by the factor e^(-eps); weights and flags are kept."""
    if eps < 0:
        raise ValueError("eps must be nonnegative")
    factor = math.exp(-eps)
    return PointCloud(cloud.points * factor, cloud.weights, cloud.mesh * factor,
                      cloud.circled, cloud.generator + f"|scale(eps={eps!r})")


def slice_and_project(cloud: PointCloud, eta: float, theta_prime_norm: float
                      ) -> tuple[PointCloud, PointCloud]:
    """Drop points with |z1| < eta, then project the rest along z1.

    Returns (S, L): S keeps the surviving points of the input (weights and
    flags preserved); L holds (z2/z1, ..., zd/z1) for each S point in the
    same order, weighted by |z1|^(1/theta_prime_norm).  The positional
    correspondence S[i] <-> L[i] is what downstream factorization checks use.
    """
    if cloud.dim < 2:
        raise ValueError("projection needs at least two variables")
    if not (eta > 0):
        raise ValueError("eta must be positive")
    if not (0 < theta_prime_norm <= 1):
        raise ValueError("theta_prime_norm must lie in (0, 1]")
    z1 = cloud.points[:, 0]
    mask = np.abs(z1) >= eta
    if not np.any(mask):
        raise ValueError(f"every point has |z1| < {eta}; nothing survives the slice")
    s_pts = cloud.points[mask]
    s_cloud = PointCloud(s_pts, cloud.weights[mask], cloud.mesh, cloud.circled,
                         cloud.generator + f"|slice(eta={eta!r})")
    ratios = s_pts[:, 1:] / s_pts[:, 0:1]
    v = np.abs(s_pts[:, 0]) ** (1.0 / theta_prime_norm)
    l_cloud = PointCloud(ratios, v, cloud.mesh, circled=False,
                         generator=cloud.generator + f"|project(tpn={theta_prime_norm!r})")
    return s_cloud, l_cloud


def shear(cloud: PointCloud, c: complex, dprime) -> PointCloud:
    """Linear change of coordinates (z1, z') -> (z1, z' - z1 * d'/c)."""
    c = complex(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    dp = np.atleast_1d(np.asarray(dprime, dtype=complex))
    if cloud.dim != len(dp) + 1:
        raise ValueError("d' must have one entry per tail variable")
    pts = cloud.points.copy()
    pts[:, 1:] = pts[:, 1:] - np.outer(pts[:, 0], dp / c)
    return PointCloud(pts, cloud.weights, cloud.mesh, cloud.circled,
                      cloud.generator + "|shear")


def save_cloud(cloud: PointCloud, path) -> None:
    """Write a cloud as text: header line, then `re1 im1 ... red imd weight` rows."""
    path = Path(path)
    lines = [f"#dim={cloud.dim} mesh={cloud.mesh!r} circled={1 if cloud.circled else 0}"]
    for row, w in zip(cloud.points, cloud.weights):
        parts = []
        for z in row:
            parts.append(repr(float(z.real)))
            parts.append(repr(float(z.imag)))
        parts.append(repr(float(w)))
        lines.append(" ".join(parts))
    path.write_text("\n".join(lines) + "\n")


def load_cloud(path) -> PointCloud:
    """Read a cloud written by save_cloud."""
    path = Path(path)
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise ValueError(f"{path}: missing header line")
    header = dict(item.split("=", 1) for item in lines[0][1:].split())
    d = int(header["dim"])
    mesh = float(header["mesh"])
    circled = header.get("circled", "0") == "1"
    pts, ws = [], []
    for ln in lines[1:]:
        vals = [float(x) for x in ln.split()]
        if len(vals) != 2 * d + 1:
            raise ValueError(f"{path}: expected {2 * d + 1} values per row, got {len(vals)}")
        pts.append([complex(vals[2 * i], vals[2 * i + 1]) for i in range(d)])
        ws.append(vals[-1])
    return PointCloud(np.array(pts, dtype=complex), np.array(ws), mesh, circled,
                      generator=f"file:{path.name}")
