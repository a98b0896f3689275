"""Robin-function models, circled sublevel clouds, numerical extremal functions.

The degree-n extremal value at a point zeta is computed through the reciprocal
normalization max{|p(zeta)| : ||w^n p||_cloud <= 1} = 1 / min{||w^n p||_cloud :
p(zeta) = 1}, and the minimum on the right is the same certified polygonal
minimax solve used for the Chebyshev constants (pin p's value at zeta, leave
every other basis direction free).  Both bracket sides transfer: the achieved
norm gives an achievable extremal value, the dual bound a certified upper one.
A vanishing minimum (pluripolar clouds) maps to the value +inf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lp import minimize_max_modulus
from .minimax import monomial_matrix
from .multiindex import enumerate_upto
from .sets import PointCloud, SetModel, generate


@dataclass(frozen=True)
class RobinModel:
    """Analytic log-homogeneous growth model for a catalog of sets."""

    kind: str
    radii: tuple[float, ...]
    centers: tuple[complex, ...] = ()

    @classmethod
    def torus(cls, radii) -> "RobinModel":
        r = tuple(float(x) for x in radii)
        if not r or any(x <= 0 for x in r):
            raise ValueError("radii must be positive")
        return cls("torus", r, tuple(0j for _ in r))

    @classmethod
    def product_discs(cls, centers, radii) -> "RobinModel":
        r = tuple(float(x) for x in radii)
        a = tuple(complex(x) for x in centers)
        if len(a) != len(r) or not r or any(x <= 0 for x in r):
            raise ValueError("need one center per positive radius")
        return cls("product_discs", r, a)

    @property
    def dim(self) -> int:
        return len(self.radii)


def robin_eval(model: RobinModel, z) -> float | np.ndarray:
    """Evaluate the model's log-homogeneous growth function at z != 0.

    For product-of-disc and torus models this is max_i (log|z_i| - log r_i);
    centers do not enter.  Accepts a single d-vector or an (N, d) array.
    """
    if model.kind not in ("torus", "product_discs"):
        raise ValueError(f"model kind {model.kind!r} has no analytic growth function")
    pts = np.asarray(z, dtype=complex)
    squeeze = pts.ndim == 1
    if squeeze:
        pts = pts[None, :]
    if pts.shape[1] != model.dim:
        raise ValueError("point dimension does not match the model")
    mods = np.abs(pts)
    if np.any(np.all(mods == 0, axis=1)):
        raise ValueError("the growth function is undefined at z = 0")
    with np.errstate(divide="ignore"):
        vals = np.max(np.log(mods) - np.log(np.array(model.radii)), axis=1)
    return float(vals[0]) if squeeze else vals


def k_rho_cloud(model: RobinModel, h: float, cap: int = 1_000_000) -> PointCloud:
    """Sample the distinguished boundary of the sublevel set {growth <= 0}.

    For both catalog kinds that set is the closed polydisc of the model's
    radii centered at 0, so the sample is the corresponding torus (circled).
    """
    if model.kind not in ("torus", "product_discs"):
        raise ValueError(f"model kind {model.kind!r} is outside the analytic catalog")
    return generate(SetModel.torus(model.radii), h, cap)


@dataclass(frozen=True)
class ExtremalGrid:
    """Degree-n extremal values on a set of evaluation points.

    values holds achievable estimates of (1/n) log max |p(zeta)| (never above
    the true value beyond solver feasibility slack), upper the matching
    certified upper bounds.  Entries are +inf where the cloud cannot bound
    the polynomial family (pluripolar degeneracy).
    """

    points: np.ndarray
    values: np.ndarray
    upper: np.ndarray
    degree: int
    weight_note: str = ""


class _PinnedSolver:
    """Shared data for extremal solves on one (cloud, degree) pair.

    Circled clouds with constant weights get a layered fast path: phase
    averaging bounds every homogeneous part of a feasible polynomial by the
    polynomial itself, so the degree <= n family splits into n small
    homogeneous problems plus the constant; the layered maximum is achievable
    and exceeds the full-family value by at most log(n+1)/n, which is added
    to the certified upper bound.
    """

    def __init__(self, cloud: PointCloud, n: int):
        self.n = n
        self.basis, _, _ = enumerate_upto(n, cloud.dim)
        self.wn = cloud.weights.astype(float) ** n
        self.mono = monomial_matrix(cloud.points, self.basis)  # includes constant
        self.layered = bool(cloud.circled) and float(np.ptp(cloud.weights)) == 0.0
        if self.layered:
            degs = np.array([b.degree for b in self.basis])
            self._layers = [np.flatnonzero(degs == k) for k in range(n + 1)]

    def solve(self, zeta: np.ndarray, tol: float
              ) -> tuple[float, float, np.ndarray | None]:
        """Return (value, upper, poly): the achievable extremal value, its
        certified upper bound, and a normalized near-extremal polynomial.

        The value is (1/n) log max |p(zeta)| over p of degree <= n with
        weighted cloud norm at most 1, computed through the reciprocal
        minimax min {||w^n p|| : p(zeta) = 1}.  The returned coefficients
        (over the full monomial basis) have weighted cloud norm 1, so
        (1/n) log |poly(.)| lower-bounds the extremal value anywhere;
        degenerate solves return (+inf, +inf, None).
        """
        if self.layered:
            return self._solve_layered(zeta, tol)
        gz = monomial_matrix(zeta[None, :], self.basis)[0]
        b = self.wn * self.mono[:, 0]          # the constant monomial is first
        a = self.wn[:, None] * (self.mono[:, 1:] - gz[None, 1:])
        res = minimize_max_modulus(b, a, tol=tol)
        if res.degenerate or res.norm <= 0.0:
            return math.inf, math.inf, None
        value = -math.log(res.norm) / self.n
        upper = -math.log(res.lower) / self.n if res.lower > 0 else math.inf
        coeffs = np.concatenate([[1.0 - np.dot(res.coeffs, gz[1:])], res.coeffs])
        return value, upper, coeffs / res.norm

    def _solve_layered(self, zeta: np.ndarray, tol: float
                       ) -> tuple[float, float, np.ndarray | None]:
        gz = monomial_matrix(zeta[None, :], self.basis)[0]
        w0n = float(self.wn[0])
        # the constant layer alone achieves -log w(zeta-independent)
        best = -math.log(w0n) / self.n
        best_upper = best
        best_poly = np.zeros(len(self.basis), dtype=complex)
        best_poly[0] = 1.0 / w0n
        for k in range(1, self.n + 1):
            cols = self._layers[k]
            gk = gz[cols]
            piv = int(np.argmax(np.abs(gk)))
            if np.abs(gk[piv]) == 0.0:
                continue
            mono_k = self.mono[:, cols]
            rest = np.delete(np.arange(len(cols)), piv)
            b = self.wn * mono_k[:, piv] / gk[piv]
            a = self.wn[:, None] * (mono_k[:, rest] - (gk[rest] / gk[piv])[None, :]
                                    * mono_k[:, piv][:, None])
            res = minimize_max_modulus(b, a, tol=tol)
            if res.degenerate or res.norm <= 0.0:
                return math.inf, math.inf, None
            value = -math.log(res.norm) / self.n
            if value > best:
                best = value
                coeffs = np.zeros(len(self.basis), dtype=complex)
                coeffs[cols[rest]] = res.coeffs
                coeffs[cols[piv]] = (1.0 - np.dot(res.coeffs, gk[rest])) / gk[piv]
                best_poly = coeffs / res.norm
            if res.lower > 0:
                best_upper = max(best_upper, -math.log(res.lower) / self.n)
            else:
                best_upper = math.inf
        return best, best_upper + math.log(self.n + 1) / self.n, best_poly


def extremal_numeric(cloud: PointCloud, n: int, eval_points, tol: float = 1e-4
                     ) -> ExtremalGrid:
    """Degree-n extremal-function values at the given evaluation points.

    tol is the relative certificate gap of each underlying minimax solve; the
    value uncertainty is about tol / n.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    pts = np.asarray(eval_points, dtype=complex)
    if pts.ndim == 1:
        pts = pts[:, None] if cloud.dim == 1 else pts[None, :]
    if pts.shape[1] != cloud.dim:
        raise ValueError("evaluation points do not match the cloud dimension")
    solver = _PinnedSolver(cloud, n)
    values = np.empty(len(pts))
    upper = np.empty(len(pts))
    for i, z in enumerate(pts):
        values[i], upper[i], _ = solver.solve(z, tol)
    return ExtremalGrid(pts, values, upper, n, weight_note="cloud weights, power n")


def default_candidate_grid(cloud: PointCloud, margin: float = 1.5,
                           resolution: int = 41) -> PointCloud:
    """Square complex grid around the cloud, margin times its largest half-extent.

    Every complex coordinate gets the same centered real/imaginary range, so
    degenerate extents (real segments, flat sets) still get a 2-d neighborhood.
    """
    pts = cloud.points
    centers = (pts.real.max(axis=0) + pts.real.min(axis=0)) / 2 + \
        1j * (pts.imag.max(axis=0) + pts.imag.min(axis=0)) / 2
    half = max(float(np.max(np.abs(pts - centers))), 1e-6) * margin
    axis = np.linspace(-half, half, resolution)
    re, im = np.meshgrid(axis, axis, indexing="ij")
    plane = (re + 1j * im).ravel()
    if cloud.dim == 1:
        grid = (centers[0] + plane)[:, None]
    else:
        grids = np.meshgrid(*[centers[i] + plane for i in range(cloud.dim)], indexing="ij")
        grid = np.stack([g.ravel() for g in grids], axis=1)
    return PointCloud(grid, np.ones(len(grid)), 2 * half / (resolution - 1),
                      circled=False, generator=f"grid(margin={margin},res={resolution})")


def z_set(cloud: PointCloud, n: int, candidates: PointCloud | None = None,
          tol: float = 1e-3, solve_tol: float = 1e-4
          ) -> tuple[PointCloud, float]:
    """Weighted sublevel construction: threshold M and the cloud below it.

    M is the maximum of the degree-n extremal values over the input cloud
    itself; the returned cloud collects the input points plus every candidate
    whose achievable extremal value is at most M + tol, all with unit weights.
    Membership uses the achievable value side, so no true member is missed.
    Feasible polynomials from already-solved points prescreen the remaining
    candidates (any one of them certifies exclusion above the threshold).
    """
    if candidates is None:
        candidates = default_candidate_grid(cloud)
    if candidates.dim != cloud.dim:
        raise ValueError("candidate cloud dimension mismatch")
    solver = _PinnedSolver(cloud, n)

    m_val = -math.inf
    for z in cloud.points:
        v, _, _ = solver.solve(z, solve_tol)
        if math.isfinite(v):
            m_val = max(m_val, v)
    if not math.isfinite(m_val):
        raise ValueError("extremal values degenerate on the cloud itself")

    thresh = m_val + tol
    cand_mono = monomial_matrix(candidates.points, solver.basis)
    exclude_bound = np.full(candidates.size, -math.inf)
    member = np.zeros(candidates.size, dtype=bool)
    order = np.argsort(-np.max(np.abs(candidates.points), axis=1), kind="stable")
    for i in order:
        if exclude_bound[i] > thresh:
            continue
        v, _, poly = solver.solve(candidates.points[i], solve_tol)
        member[i] = v <= thresh
        if not member[i] and poly is not None:
            with np.errstate(divide="ignore"):
                bound = np.log(np.abs(cand_mono @ poly)) / n
            exclude_bound = np.maximum(exclude_bound, bound)
    z_pts = np.concatenate([cloud.points, candidates.points[member]], axis=0)
    z_cloud = PointCloud(z_pts, np.ones(len(z_pts)), candidates.mesh, circled=False,
                         generator=f"z_set(n={n},M={m_val!r})|{cloud.generator}")
    return z_cloud, m_val
