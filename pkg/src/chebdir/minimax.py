"""Chebyshev (minimax) polynomial problems on finite point clouds.

The central object is the directional constant: for a multi-index alpha, the
monic class consists of z^alpha plus arbitrary combinations of the monomials
strictly before alpha in the monomial order, and the constant is the |alpha|-th
root of the minimal weighted sup norm over the cloud.  Circled clouds admit an
exact restriction to same-degree competitors, which tau() applies automatically
(valid on phase-grid clouds whenever the grid has more angles than the degree).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .lp import MinimaxResult, minimize_max_modulus
from .multiindex import MultiIndex, as_multiindex, basis_below, enumerate_upto
from .sets import PointCloud


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial over an explicit ordered monomial basis."""

    basis: tuple[MultiIndex, ...]
    coeffs: np.ndarray

    def __post_init__(self):
        basis = tuple(self.basis)
        if not basis:
            raise ValueError("empty basis")
        d = basis[0].dim
        if any(b.dim != d for b in basis):
            raise ValueError("mixed dimensions in basis")
        for a, b in zip(basis, basis[1:]):
            if not a < b:
                raise ValueError("basis must be strictly increasing in the monomial order")
        coeffs = np.array(self.coeffs, dtype=complex, copy=True)
        if coeffs.shape != (len(basis),):
            raise ValueError("need one coefficient per basis element")
        coeffs.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def dim(self) -> int:
        return self.basis[0].dim

    @property
    def degree(self) -> int:
        """Largest degree carrying a nonzero coefficient."""
        nz = [b.degree for b, c in zip(self.basis, self.coeffs) if c != 0]
        if not nz:
            raise ValueError("zero polynomial has no degree")
        return max(nz)

    def is_homogeneous(self) -> bool:
        degs = {b.degree for b, c in zip(self.basis, self.coeffs) if c != 0}
        return len(degs) == 1

    def __call__(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=complex)
        squeeze = pts.ndim == 1
        if squeeze:
            pts = pts[None, :]
        vals = monomial_matrix(pts, self.basis) @ self.coeffs
        return vals[0] if squeeze else vals


def monomial_matrix(points: np.ndarray, basis) -> np.ndarray:
    """Evaluate monomials at points: entry (i, j) is points[i] ** basis[j].

    Uses cumulative power tables per variable, so cost is linear in the
    maximal degree rather than in the number of monomials.
    """
    pts = np.asarray(points, dtype=complex)
    if pts.ndim == 1:
        pts = pts[:, None]
    basis = [as_multiindex(b) for b in basis]
    if not basis:
        return np.zeros((pts.shape[0], 0), dtype=complex)
    d = pts.shape[1]
    if any(b.dim != d for b in basis):
        raise ValueError("basis dimension does not match the points")
    max_deg = [max(b.exponents[i] for b in basis) for i in range(d)]
    tables = []
    for i in range(d):
        tab = np.empty((max_deg[i] + 1, pts.shape[0]), dtype=complex)
        tab[0] = 1.0
        for k in range(1, max_deg[i] + 1):
            tab[k] = tab[k - 1] * pts[:, i]
        tables.append(tab)
    out = np.empty((pts.shape[0], len(basis)), dtype=complex)
    for j, b in enumerate(basis):
        col = tables[0][b.exponents[0]].copy()
        for i in range(1, d):
            col *= tables[i][b.exponents[i]]
        out[:, j] = col
    return out


@dataclass(frozen=True)
class ChebyshevResult:
    """Outcome of one minimax solve.

    norm is the achieved weighted sup modulus of the returned monic
    polynomial, tau its |alpha|-th root, dual_lower_bound a certified lower
    bound on the true minimum and rel_gap their relative distance.  degenerate
    marks an exactly-zero objective (pluripolar/weighted collapse).
    """

    alpha: MultiIndex
    norm: float
    tau: float
    polynomial: Polynomial
    dual_lower_bound: float
    rel_gap: float
    m_final: int
    degenerate: bool
    rounds: tuple = field(default=())


def solve_minimax(cloud: PointCloud, alpha, homogeneous_only: bool = False,
                  weight_exponent: float | None = None, tol: float = 1e-6,
                  m_start: int = 32, m_cap: int = 1 << 15) -> ChebyshevResult:
    """Minimize the weighted sup modulus over the monic class of alpha.

    The objective is max_i w_i^p |z_i^alpha + sum_{beta before alpha} c_beta
    z_i^beta| with p = weight_exponent (default |alpha|); homogeneous_only
    restricts the competitors to the same total degree.  Certificates follow
    the polygon construction in chebdir.lp.
    """
    a = as_multiindex(alpha)
    n = a.degree
    if n == 0:
        raise ValueError("|alpha| must be at least 1")
    if a.dim != cloud.dim:
        raise ValueError("alpha dimension does not match the cloud")
    if not (tol > 0):
        raise ValueError("tol must be positive")
    p = float(n if weight_exponent is None else weight_exponent)
    wfac = cloud.weights ** p
    keep = wfac > 0
    pts = cloud.points[keep]
    wk = wfac[keep]
    basis = basis_below(a, homogeneous_only)
    b_vec = wk * monomial_matrix(pts, [a])[:, 0]
    a_mat = wk[:, None] * monomial_matrix(pts, basis)
    res: MinimaxResult = minimize_max_modulus(b_vec, a_mat, tol=tol,
                                              m_start=m_start, m_cap=m_cap)
    full_basis = tuple(basis) + (a,)
    full_coeffs = np.concatenate([res.coeffs, [1.0 + 0j]])
    poly = Polynomial(full_basis, full_coeffs)
    tau_val = 0.0 if res.degenerate else res.norm ** (1.0 / n)
    return ChebyshevResult(a, res.norm, tau_val, poly, res.lower, res.rel_gap,
                           res.m_final, res.degenerate, tuple(res.rounds))


def tau(cloud: PointCloud, alpha, tol: float = 1e-6, **kwargs) -> float:
    """Directional Chebyshev constant of the cloud at alpha.

    Weights are raised to the power |alpha|; circled clouds are solved over
    same-degree competitors only (exact for phase-grid clouds with more grid
    angles than |alpha|).
    """
    a = as_multiindex(alpha)
    if a.degree < 1:
        raise ValueError("|alpha| must be at least 1")
    return solve_minimax(cloud, a, homogeneous_only=cloud.circled,
                         tol=tol, **kwargs).tau


def tch_reduce(cloud: PointCloud, q: Polynomial, weighted: bool = False,
               tol: float = 1e-6, **kwargs) -> ChebyshevResult:
    """Best sup-norm reduction of a homogeneous form by lower-degree terms.

    Minimizes ||w^n (Q + h)|| over all h of degree <= n - 1 (the full
    lower-degree space, not only order-earlier monomials); the optimizer's
    top-degree part equals Q exactly.
    """
    if not q.is_homogeneous():
        raise ValueError("Q must be homogeneous")
    n = q.degree
    if n < 1:
        raise ValueError("degree of Q must be at least 1")
    if q.dim != cloud.dim:
        raise ValueError("Q dimension does not match the cloud")
    wfac = cloud.weights ** n if weighted else np.ones(cloud.size)
    keep = wfac > 0
    pts = cloud.points[keep]
    wk = wfac[keep]
    corr_basis, _, _ = enumerate_upto(n - 1, cloud.dim)
    b_vec = wk * q(pts)
    a_mat = wk[:, None] * monomial_matrix(pts, corr_basis)
    res = minimize_max_modulus(b_vec, a_mat, tol=tol, **kwargs)
    q_keep = [(b, c) for b, c in zip(q.basis, q.coeffs)]
    full_basis = tuple(corr_basis) + tuple(b for b, _ in q_keep)
    full_coeffs = np.concatenate([res.coeffs, [c for _, c in q_keep]])
    poly = Polynomial(full_basis, full_coeffs)
    tau_val = 0.0 if res.degenerate else res.norm ** (1.0 / n)
    return ChebyshevResult(q.basis[-1], res.norm, tau_val, poly, res.lower,
                           res.rel_gap, res.m_final, res.degenerate,
                           tuple(res.rounds))


def leading_form(p: Polynomial) -> Polynomial:
    """Top-degree part of a nonzero polynomial."""
    deg = p.degree  # raises on the zero polynomial
    pairs = [(b, c) for b, c in zip(p.basis, p.coeffs) if b.degree == deg]
    return Polynomial(tuple(b for b, _ in pairs), np.array([c for _, c in pairs]))


def slope_polynomial(p: Polynomial) -> Polynomial:
    """Rewrite a homogeneous p as z1^n * r(z2/z1, ..., zd/z1); returns r.

    The coefficient of t^(beta tail) in r is the coefficient of z^beta in p,
    so |p(z)| = |z1|^n |r(z2/z1, ..., zd/z1)| wherever z1 != 0.
    """
    if not p.is_homogeneous():
        raise ValueError("p must be homogeneous")
    if p.dim < 2:
        raise ValueError("need at least two variables")
    pairs = sorted(((b.tail, c) for b, c in zip(p.basis, p.coeffs)),
                   key=lambda bc: bc[0].sort_key())
    return Polynomial(tuple(b for b, _ in pairs), np.array([c for _, c in pairs]))


def monomial(alpha, coeff: complex = 1.0) -> Polynomial:
    """Single-term polynomial coeff * z^alpha."""
    a = as_multiindex(alpha)
    return Polynomial((a,), np.array([coeff], dtype=complex))
