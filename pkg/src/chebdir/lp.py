"""Certified LP minimization/maximization of complex moduli of affine forms.

The core problem is  min_c max_i |b_i + (A c)_i|  over complex coefficient
vectors c.  Each modulus bound |u| <= t is relaxed to the m supporting
half-planes of the disc, Re(e^{-i phi_k} u) <= t at phi_k = 2 pi k / m.  The
relaxation is an LP in the real and imaginary coefficient parts plus t,
solved on a lazily grown working set of (point, angle) rows; its dual value,
shrunk by cos(pi/m), is a certified lower bound for the true modulus problem,
and the achieved modulus of the LP solution is a certified upper bound.  m
doubles until the relative gap closes below tol.

Monomial columns can be arbitrarily ill-conditioned (power bases on segments),
so the LP runs in an orthonormal reparameterization of the column space
obtained from an SVD; that leaves the feasible residual set unchanged while
keeping the backend numerically comfortable.  Coefficients are mapped back to
the caller's basis at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

ZERO_NORM = 1e-12
_FEAS_TOL = 1e-10
_RANK_TOL = 1e-14
_MAX_LAZY_ROUNDS = 400
_HIGHS_OPTS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}


def _linprog(c_obj, a_ub, b_ub, bounds):
    """HiGHS call, falling back to laxer setups on failure.

    Tight tolerances pay off on small deep-cancellation problems but can cycle
    badly on large degenerate ones, so they are size-gated.  Presolve
    occasionally misreports unbounded subproblems as hard errors; the
    presolve-off retry turns those into a clean unbounded status.
    """
    small = a_ub.shape[0] <= 800 and a_ub.shape[1] <= 160
    res = linprog(c_obj, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs",
                  options=_HIGHS_OPTS if small else None)
    if res.status == 4 and small:
        res = linprog(c_obj, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs")
    if res.status == 4:
        res = linprog(c_obj, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs",
                      options={"presolve": False})
    return res


class SolverError(RuntimeError):
    """LP backend failed or the polygon refinement did not converge."""


@dataclass
class MinimaxResult:
    coeffs: np.ndarray
    norm: float
    lower: float
    rel_gap: float
    m_final: int
    degenerate: bool
    rounds: list = field(default_factory=list)  # (m, lower, norm) per refinement


def _polygon_norms(r: np.ndarray, m: int) -> np.ndarray:
    """max_k Re(e^{-i phi_k} r) over the m-gon angle grid, vectorized."""
    step = 2 * math.pi / m
    ang = np.angle(r)
    rem = np.mod(ang, step)
    dist = np.minimum(rem, step - rem)
    return np.abs(r) * np.cos(dist)


def _nearest_angle(r: np.ndarray, m: int) -> np.ndarray:
    step = 2 * math.pi / m
    return np.mod(np.rint(np.angle(r) / step).astype(int), m)


def _rows_for(pairs, b, A, m):
    """LP rows Re(e^{-i phi_k}(b_i + A_i c)) <= t for the (i, k) pairs."""
    idx = np.array([p[0] for p in pairs], dtype=int)
    ks = np.array([p[1] for p in pairs], dtype=int)
    u = np.exp(-2j * np.pi * ks / m)
    if A.shape[1]:
        ua = u[:, None] * A[idx]
        lhs = np.concatenate([ua.real, -ua.imag], axis=1)
    else:
        lhs = np.zeros((len(pairs), 0))
    rhs = -(u * b[idx]).real
    return lhs, rhs


class _OrthoSpace:
    """Orthonormal reparameterization of the column space of a complex matrix."""

    def __init__(self, a: np.ndarray):
        n_pts, n_cols = a.shape
        col_max = np.max(np.abs(a), axis=0) if n_cols else np.zeros(0)
        self.n_cols = n_cols
        self.live = col_max > 0
        self._col_scale = col_max[self.live]
        scaled = a[:, self.live] / self._col_scale
        if scaled.shape[1]:
            u, s, vh = np.linalg.svd(scaled, full_matrices=False)
            rank = int(np.sum(s > s[0] * _RANK_TOL)) if s.size else 0
        else:
            u = np.zeros((n_pts, 0))
            s = np.zeros(0)
            vh = np.zeros((0, 0))
            rank = 0
        self.rank = rank
        self.basis = np.ascontiguousarray(u[:, :rank])  # (N, rank), orthonormal
        self._s = s[:rank]
        self._vh = vh[:rank]

    def to_coeffs(self, chat: np.ndarray) -> np.ndarray:
        """Map orthonormal-space coordinates back to the caller's basis."""
        out = np.zeros(self.n_cols, dtype=complex)
        if self.rank:
            out[self.live] = (self._vh.conj().T @ (chat / self._s)) / self._col_scale
        return out


def _solve_working(b, A, pairs, m):
    """Solve the epigraph LP on the given working rows.

    Returns (chat, t, dual): dual is the working-set LP dual objective, a
    valid lower bound for the full polygon LP and hence, after the cos(pi/m)
    correction, for the true modulus problem.

    Coefficient variables carry the a-priori box |x_j| <= 2.1 sqrt(N): the
    columns are orthonormal, so any full-problem optimum satisfies it, and
    HiGHS is much happier without free variables.  Bound multipliers enter
    the dual objective so the certificate stays valid when the box binds.
    """
    nb = A.shape[1]
    lhs, rhs = _rows_for(pairs, b, A, m)
    a_ub = np.concatenate([lhs, -np.ones((len(pairs), 1))], axis=1)
    c_obj = np.zeros(2 * nb + 1)
    c_obj[-1] = 1.0
    radius = 2.1 * math.sqrt(A.shape[0])
    bounds = [(-radius, radius)] * (2 * nb) + [(0.0, None)]
    res = _linprog(c_obj, a_ub, rhs, bounds)
    if res.status != 0:
        raise SolverError(f"LP backend status {res.status}: {res.message}")
    x = res.x
    chat = x[:nb] + 1j * x[nb:2 * nb]
    t = float(x[-1])
    dual = t
    marg = getattr(res.ineqlin, "marginals", None)
    if marg is not None and len(marg) == len(rhs):
        dual = float(marg @ rhs)
        lo_m = getattr(res.lower, "marginals", None)
        up_m = getattr(res.upper, "marginals", None)
        if lo_m is not None and len(lo_m) == 2 * nb + 1:
            dual += -radius * float(np.sum(lo_m[:-1])) + 0.0 * float(lo_m[-1])
        if up_m is not None and len(up_m) == 2 * nb + 1:
            dual += radius * float(np.sum(up_m[:-1]))
    # guard against backend round-off: the certificate must not exceed t
    return chat, t, min(dual, t)


def minimize_max_modulus(b, A, tol: float = 1e-6, m_start: int = 32,
                         m_cap: int = 1 << 15) -> MinimaxResult:
    """Certified solve of min_c max_i |b_i + (A c)_i|.

    b is a complex (N,) vector, A a complex (N, B) matrix.  result.norm is
    the exact modulus maximum of the returned solution, result.lower a
    certified lower bound on the true minimum, and rel_gap their relative
    distance (<= tol on success).  An achieved norm below 1e-12 absolute is
    reported as exactly 0 with the degenerate flag set.
    """
    b = np.asarray(b, dtype=complex)
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise ValueError("A must be (N, B) matching b of length N")
    n_pts, n_basis = A.shape
    if not (tol > 0):
        raise ValueError("tol must be positive")

    scale0 = float(np.max(np.abs(b))) if len(b) else 0.0
    if scale0 < ZERO_NORM:
        # the forced term vanishes identically; c = 0 is exactly optimal
        return MinimaxResult(np.zeros(n_basis, dtype=complex), 0.0, 0.0, 0.0,
                             m_start, True, [(m_start, 0.0, 0.0)])

    space = _OrthoSpace(A)
    bn = b / scale0
    a_lp = space.basis

    if space.rank == 0:
        norm = scale0
        return MinimaxResult(np.zeros(n_basis, dtype=complex), norm, norm, 0.0,
                             m_start, False, [(m_start, norm, norm)])

    m = int(m_start)
    nb = space.rank
    seed_count = min(n_pts, max(8, 2 * nb + 4))
    seed_idx = np.argsort(-np.abs(bn), kind="stable")[:seed_count]
    working: dict[tuple[int, int], None] = {}
    for i in seed_idx:
        working[(int(i), int(_nearest_angle(bn[i:i + 1], m)[0]))] = None

    # The optimum can sit many orders below max |b| (deep minimax killing),
    # which would leave the backend solving for huge cancelling coefficients.
    # Each round therefore solves for a correction around the current best
    # solution, renormalized to unit scale; certificates transfer unchanged
    # because the correction ranges over the same column space.
    scale_cur = scale0
    chat_base = np.zeros(nb, dtype=complex)
    b_cur = bn
    rescales = 0
    rounds = []
    while True:
        delta, t, dual = _lazy_polygon_min(b_cur, a_lp, working, m)
        chat_try = chat_base + scale_cur * delta
        resid = b + a_lp @ chat_try
        norm = float(np.max(np.abs(resid)))
        if norm < ZERO_NORM:
            return MinimaxResult(space.to_coeffs(chat_try), 0.0, 0.0, 0.0,
                                 m, True, rounds)
        lower = math.cos(math.pi / m) * max(dual, 0.0) * scale_cur
        rounds.append((m, lower, norm))
        gap = (norm - lower) / norm
        if gap <= tol:
            return MinimaxResult(space.to_coeffs(chat_try), norm, lower,
                                 gap, m, False, rounds)
        fresh_scale = norm / scale_cur < 1e-2
        chat_base = chat_try
        scale_cur = norm
        b_cur = (b + a_lp @ chat_base) / scale_cur
        if fresh_scale and rescales < 6:
            # big scale drop: re-solve the same polygon at the new centering
            rescales += 1
            continue
        if m * 2 > m_cap:
            raise SolverError(
                f"polygon refinement stalled at m={m}, rel_gap={gap:.3e} > tol={tol:.3e}")
        working = {(i, 2 * k): None for (i, k) in working}
        m *= 2


def _prune_working(working, values, m, level, keep_cap):
    """Drop rows far from binding; keeps the LPs small across repeated calls."""
    pairs = list(working)
    if len(pairs) <= keep_cap:
        return
    idx = np.array([p[0] for p in pairs], dtype=int)
    ks = np.array([p[1] for p in pairs], dtype=int)
    act = (np.exp(-2j * np.pi * ks / m) * values[idx]).real
    slack = level - act
    thresh = max(1e-6, 1e-6 * abs(level))
    order = np.argsort(slack, kind="stable")
    keep = [pairs[j] for j in order[:keep_cap] if slack[j] <= thresh]
    if len(keep) < 8:
        keep = [pairs[j] for j in order[:min(len(pairs), 8)]]
    working.clear()
    for p in keep:
        working[p] = None


def _lazy_polygon_min(b, A, working, m):
    """Grow the working set until no polygon constraint is violated."""
    add_cap = max(32, 4 * A.shape[1] + 8)
    keep_cap = max(64, 12 * A.shape[1] + 16)
    for _ in range(_MAX_LAZY_ROUNDS):
        pairs = list(working)
        chat, t, dual = _solve_working(b, A, pairs, m)
        resid = b + A @ chat
        poly = _polygon_norms(resid, m)
        viol = poly - t
        bad = np.flatnonzero(viol > _FEAS_TOL)
        if bad.size == 0:
            _prune_working(working, resid, m, t, keep_cap)
            return chat, t, dual
        if bad.size > add_cap:
            bad = bad[np.argsort(-viol[bad], kind="stable")[:add_cap]]
        ks = _nearest_angle(resid[bad], m)
        grew = False
        for i, k in zip(bad, ks):
            key = (int(i), int(k))
            if key not in working:
                working[key] = None
                grew = True
        if not grew:
            # violated rows already present: accept (backend feasibility slack)
            _prune_working(working, resid, m, t, keep_cap)
            return chat, t, dual
    raise SolverError("lazy constraint generation did not settle")
