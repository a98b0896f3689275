"""Vandermonde determinants, greedy Fekete extraction, transfinite diameter.

Two estimators of the transfinite diameter are provided: the Vandermonde
route exp(log V_n / l_n) from a greedily maximized point configuration (a
certified lower bound on the discrete maximum), and the directional route
exp(mean of log tau over the open simplex) via midpoint quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .minimax import monomial_matrix, tau
from .multiindex import enumerate_upto, largest_remainder
from .sets import PointCloud


class DegenerateDirectionError(RuntimeError):
    """A quadrature node produced tau = 0, so log tau is -inf there."""

    def __init__(self, theta, alpha):
        self.theta = tuple(theta)
        self.alpha = alpha
        super().__init__(
            f"tau vanished at quadrature node theta={self.theta} (alpha={alpha}); "
            "the integral formula does not apply to this cloud")


@dataclass(frozen=True)
class VdmConfig:
    """Settings for a Fekete extraction run."""

    degree: int
    candidates: PointCloud
    exchange_rounds: int = 2

    def __post_init__(self):
        basis, d_n, _ = enumerate_upto(self.degree, self.candidates.dim)
        if self.candidates.size < d_n:
            raise ValueError(f"need at least {d_n} candidate points, have {self.candidates.size}")
        object.__setattr__(self, "_basis", basis)

    @property
    def basis(self):
        return self._basis


def log_vdm(points, n: int) -> float:
    """log |det| of the monomial evaluation matrix at exactly d_n points.

    Rows are scaled before the determinant for conditioning; the scale factors
    are added back in log space.  Returns -inf for singular configurations.
    """
    pts = np.asarray(points, dtype=complex)
    if pts.ndim == 1:
        pts = pts[:, None]
    basis, d_n, _ = enumerate_upto(n, pts.shape[1])
    if pts.shape[0] != d_n:
        raise ValueError(f"need exactly d_n = {d_n} points, got {pts.shape[0]}")
    m = monomial_matrix(pts, basis).T  # rows = monomials, columns = points
    row_scale = np.max(np.abs(m), axis=1)
    if np.any(row_scale == 0):
        return -math.inf
    sign, logdet = np.linalg.slogdet(m / row_scale[:, None])
    if sign == 0:
        return -math.inf
    return float(logdet + np.sum(np.log(row_scale)))


def greedy_fekete(cloud: PointCloud, n: int, exchange_rounds: int = 2
                  ) -> tuple[np.ndarray, float]:
    """Greedy maximal-volume point selection plus single-point exchanges.

    Each greedy step takes the candidate farthest from the span of the rows
    already chosen (ties to the lowest index); each exchange round scans all
    single-point swaps and applies the best strictly improving one.  Returns
    (points, log_vdm) with the log value recomputed exactly for the final
    configuration, so it is a certified lower bound for the discrete maximum.
    """
    basis, d_n, _ = enumerate_upto(n, cloud.dim)
    if cloud.size < d_n:
        raise ValueError(f"need at least {d_n} candidates, have {cloud.size}")
    e_full = monomial_matrix(cloud.points, basis)
    col_scale = np.max(np.abs(e_full), axis=0)
    col_scale[col_scale == 0] = 1.0
    e = e_full / col_scale

    r = e.copy()
    rn2 = np.einsum("ij,ij->i", r, r.conj()).real
    chosen: list[int] = []
    for k in range(d_n):
        masked = rn2.copy()
        masked[chosen] = -1.0
        i = int(np.argmax(masked))
        nrm = math.sqrt(max(masked[i], 0.0))
        if nrm <= 0:
            raise ValueError("candidate cloud is degenerate for this degree")
        u = r[i] / nrm
        proj = r @ u.conj()
        r -= np.outer(proj, u)
        rn2 = np.maximum(rn2 - np.abs(proj) ** 2, 0.0)
        if k % 32 == 31:
            rn2 = np.einsum("ij,ij->i", r, r.conj()).real
        chosen.append(i)

    sel = list(chosen)
    for _ in range(max(0, exchange_rounds)):
        a = e[sel]
        try:
            b_inv = np.linalg.inv(a)
        except np.linalg.LinAlgError:
            break
        ratios = np.abs(e @ b_inv)  # (N, d_n): row-replacement determinant ratios
        ratios[sel, :] = 0.0
        flat = int(np.argmax(ratios))
        i_new, slot = divmod(flat, d_n)
        if ratios[i_new, slot] <= 1.0 + 1e-9:
            break
        sel[slot] = i_new

    pts = cloud.points[sel]
    return pts, log_vdm(pts, n)


def delta_fekete(cloud: PointCloud, n: int, exchange_rounds: int = 2) -> float:
    """Transfinite-diameter estimate exp(log V_n / l_n) at a single degree."""
    _, _, l_n = enumerate_upto(n, cloud.dim)
    _, logv = greedy_fekete(cloud, n, exchange_rounds)
    return math.exp(logv / l_n)


def _simplex_midpoints(d: int, nodes: int) -> list[tuple[float, ...]]:
    """Interior midpoint-rule nodes on the standard simplex of dimension d-1."""
    if d == 2:
        return [((k + 0.5) / nodes, 1.0 - (k + 0.5) / nodes) for k in range(nodes)]
    if d == 3:
        # congruent-triangle subdivision; every cell centroid is interior
        pts = []
        for i in range(nodes):
            for j in range(nodes - i):
                x, y = (i + 1 / 3) / nodes, (j + 1 / 3) / nodes
                pts.append((x, y, 1.0 - x - y))
        for i in range(nodes):
            for j in range(max(0, nodes - i - 1)):
                x, y = (i + 2 / 3) / nodes, (j + 2 / 3) / nodes
                pts.append((x, y, 1.0 - x - y))
        return pts
    raise ValueError("directional quadrature supports d = 2 or d = 3 only")


def delta_zaharjuta(cloud: PointCloud, nodes: int = 16, degree_for_tau: int = 20,
                    tol: float = 1e-4) -> float:
    """Transfinite diameter via exp of the simplex average of log tau.

    tau is evaluated at the multi-index rounding of degree_for_tau * theta for
    each interior quadrature node theta.  A vanishing tau at any node makes
    the integrand -inf and raises DegenerateDirectionError naming the node.
    """
    if nodes < 1:
        raise ValueError("need at least one quadrature node")
    thetas = _simplex_midpoints(cloud.dim, nodes)
    total = 0.0
    for th in thetas:
        alpha = largest_remainder(th, degree_for_tau)
        t = tau(cloud, alpha, tol=tol)
        if t <= 0.0:
            raise DegenerateDirectionError(th, alpha)
        total += math.log(t)
    return math.exp(total / len(thetas))
