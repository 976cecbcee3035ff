"""Linear complementarity formulation and solvers.

Equilibria of a linear best-reply game are exactly the solutions of
LCP(I + G, -q): find z, w >= 0 with w = (I + G) z - q and w'z = 0.  The
solution vector z is the equilibrium effort profile; w holds the slacks of
the truncated best replies.

Two solvers are provided: exhaustive support enumeration (exact on small
problems, finds every solution) and complementary pivoting (fast on P-matrix
instances, finds one solution).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.optimize import linprog

from ._kernels import TOL_PIV, lemke_pivot, support_scan
from .errors import (
    BudgetError,
    CapacityError,
    InternalConsistencyError,
    InvalidParameterError,
    ShapeError,
)

#: Feasibility and complementarity tolerance for accepting LCP solutions.
FEAS_TOL = 1e-8

#: An index counts as active (z) or slack (w) only above this threshold.
ACTIVE_TOL = 1e-7

#: Hard cap on support enumeration (2^d supports).
ENUM_CAP = 25

#: Residual ceiling for a pivoting result to be accepted as solved.
LEMKE_RESIDUAL_TOL = 1e-8

DEFAULT_MAX_PIVOTS = 10_000


@dataclass
class LcpProblem:
    m: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.m = np.asarray(self.m, dtype=np.float64)
        self.b = np.asarray(self.b, dtype=np.float64).reshape(-1)
        if self.m.ndim != 2 or self.m.shape[0] != self.m.shape[1]:
            raise ShapeError(f"LCP matrix must be square, got {self.m.shape}")
        if self.b.shape[0] != self.m.shape[0]:
            raise ShapeError("LCP constant vector length must match the matrix")
        if not (np.isfinite(self.m).all() and np.isfinite(self.b).all()):
            raise InvalidParameterError("LCP data contains non-finite entries")

    @property
    def d(self) -> int:
        return self.m.shape[0]


@dataclass
class LcpSolution:
    """A solution point.  ``degenerate`` marks points that either came from
    a singular support (a representative of a solution continuum) or have an
    index with both z and w at zero."""

    z: np.ndarray
    w: np.ndarray
    residual: float
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "z": [float(v) for v in self.z],
            "w": [float(v) for v in self.w],
            "residual": float(self.residual),
        }


@dataclass
class RayTermination:
    """Pivoting left along an unblocked ray; no solution was produced."""

    pivots: int
    d: int


@dataclass
class IndexPartition:
    """Index classes of a solution: ``j`` active (z > 0, w = 0), ``k``
    doubly tight (z = 0, w = 0), ``l`` slack (z = 0, w > 0)."""

    j: tuple = field(default_factory=tuple)
    k: tuple = field(default_factory=tuple)
    l: tuple = field(default_factory=tuple)


def from_game(game) -> LcpProblem:
    """LCP whose solutions are the game's equilibrium effort profiles."""
    g = game.effective_matrix()
    q = game.effective_targets()
    return LcpProblem(np.eye(g.shape[0]) + g, -q)


def residual_of(p: LcpProblem, z, w) -> float:
    """Worst violation of feasibility, the linear relation, and
    complementarity at (z, w)."""
    z = np.asarray(z, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    lin = np.abs(p.m @ z + p.b - w).max(initial=0.0)
    neg = max(-z.min(initial=0.0), -w.min(initial=0.0), 0.0)
    comp = np.abs(z * w).max(initial=0.0)
    return float(max(lin, neg, comp))


def _solution_from_z(p: LcpProblem, z, degenerate: bool) -> LcpSolution:
    z = np.asarray(z, dtype=np.float64)
    w = p.m @ z + p.b
    return LcpSolution(z, w, residual_of(p, z, w), degenerate)


def enumerate_solutions(
    p: LcpProblem, tol: float = FEAS_TOL, cap: int = ENUM_CAP
) -> list[LcpSolution]:
    """Every solution of the LCP by exhaustive support enumeration.

    Solutions are deduplicated (max-norm distance ``tol``) and returned in
    lexicographic z order.  Singular supports are not dropped: consistent
    ones contribute their least-norm point, flagged degenerate.  Raises
    :class:`CapacityError` beyond ``cap`` dimensions.
    """
    if tol <= 0.0:
        raise InvalidParameterError("tol must be positive")
    if p.d > cap:
        raise CapacityError(
            f"support enumeration over {p.d} indices exceeds the cap of {cap}"
        )
    raw, singular, overflow = support_scan(p.m, p.b, tol)
    if overflow:
        raise CapacityError("support enumeration output cap exceeded")

    points: list[tuple[np.ndarray, bool]] = [(z, False) for z in raw]
    for support in singular:
        s = list(support)
        sub = p.m[np.ix_(s, s)]
        rhs = -p.b[s]
        zs, *_ = np.linalg.lstsq(sub, rhs, rcond=None)
        scale = max(1.0, float(np.abs(rhs).max(initial=0.0)))
        if np.abs(sub @ zs - rhs).max(initial=0.0) > tol * scale:
            continue  # inconsistent subsystem: no solution on this support
        if zs.min(initial=0.0) < -tol:
            continue
        z = np.zeros(p.d)
        z[s] = zs
        w = p.m @ z + p.b
        off = np.ones(p.d, dtype=bool)
        off[s] = False
        if off.any() and w[off].min() < -tol:
            continue
        points.append((z, True))

    # deduplicate, merging degeneracy flags, then order lexicographically
    kept: list[list] = []
    for z, dg in points:
        for entry in kept:
            if np.abs(entry[0] - z).max(initial=0.0) <= tol:
                entry[1] = entry[1] or dg
                break
        else:
            kept.append([z, dg])
    kept.sort(key=lambda entry: tuple(entry[0]))

    out = []
    for z, dg in kept:
        sol = _solution_from_z(p, z, dg)
        part = partition(sol)
        if part.k:
            sol.degenerate = True
        out.append(sol)
    return out


def lemke(
    p: LcpProblem,
    max_pivots: int = DEFAULT_MAX_PIVOTS,
    piv_tol: float = TOL_PIV,
):
    """One solution by complementary pivoting with an all-ones covering
    vector and lexicographic tie-breaking.

    Returns an :class:`LcpSolution`, or a :class:`RayTermination` report when
    pivoting escapes along an unblocked ray (never happens for P-matrix
    instances).  Raises :class:`BudgetError` when ``max_pivots`` is reached.
    """
    if max_pivots < 1:
        raise InvalidParameterError("max_pivots must be at least 1")
    status, z, w, pivots = lemke_pivot(p.m, p.b, max_pivots, piv_tol)
    if status == 1:
        return RayTermination(pivots=pivots, d=p.d)
    if status == 2:
        raise BudgetError(f"pivot budget of {max_pivots} exhausted")
    z = np.maximum(z, 0.0)
    w = np.maximum(w, 0.0)
    res = residual_of(p, z, w)
    if res > LEMKE_RESIDUAL_TOL:
        raise InternalConsistencyError(
            f"pivoting reported a solution with residual {res:.3e}"
        )
    return LcpSolution(z, w, res, False)


def partition(sol: LcpSolution, tol_active: float = ACTIVE_TOL) -> IndexPartition:
    """Classify indices of a solution; raises on non-complementary input."""
    if tol_active <= 0.0:
        raise InvalidParameterError("tol_active must be positive")
    j, k, l = [], [], []
    for i, (zi, wi) in enumerate(zip(sol.z, sol.w)):
        za, wa = zi > tol_active, wi > tol_active
        if za and wa:
            raise InvalidParameterError(
                f"index {i} has both effort and slack above {tol_active}; "
                "not a complementary point"
            )
        if za:
            j.append(i)
        elif wa:
            l.append(i)
        else:
            k.append(i)
    return IndexPartition(tuple(j), tuple(k), tuple(l))


def nonuniqueness_target(m, subset, slack: float = 1e-11):
    """Construct b such that LCP(m, b) has at least two solutions.

    ``subset`` must index a principal submatrix with nonpositive determinant.
    A vector x supported on the subset whose sign pattern is weakly reversed
    by m (x_i (m x)_i <= 0 for all i) is found by a small LP over sign
    patterns; both x+ and x- then solve LCP(m, b) for the returned b.

    Returns (b, z_a, z_b).  Raises :class:`InternalConsistencyError` when no
    verified construction is found (possible when the minor fails only by a
    rounding margin).
    """
    m = np.asarray(m, dtype=np.float64)
    s = sorted(int(i) for i in subset)
    sub = m[np.ix_(s, s)]
    kdim = len(s)
    if kdim == 0:
        raise ShapeError("subset must be nonempty")
    scale = max(1.0, float(np.abs(sub).max(initial=0.0)))

    for signs in product((1.0, -1.0), repeat=kdim):
        sigma = np.array(signs)
        # y >= 0, sum y = 1, sigma_i (sub @ (sigma*y))_i <= slack
        a_ub = sigma[:, None] * sub * sigma[None, :]
        res = linprog(
            c=np.zeros(kdim),
            A_ub=a_ub,
            b_ub=np.full(kdim, slack * scale),
            A_eq=np.ones((1, kdim)),
            b_eq=np.array([1.0]),
            bounds=[(0.0, None)] * kdim,
            method="highs",
        )
        if not res.success:
            continue
        x = np.zeros(m.shape[0])
        x[s] = sigma * res.x
        x[np.abs(x) < 1e-12] = 0.0
        if not np.any(x):
            continue
        x /= np.abs(x).max()

        xp = np.maximum(x, 0.0)
        xm = np.maximum(-x, 0.0)
        mp = m @ xp
        mm = m @ xm
        b = np.where(x > 0.0, -mp, np.where(x < 0.0, -mm, np.maximum(-mp, -mm)))

        prob = LcpProblem(m, b)
        za = _solution_from_z(prob, xp, False)
        zb = _solution_from_z(prob, xm, False)
        if max(za.residual, zb.residual) <= 10.0 * slack * scale + 1e-9:
            return b, xp, xm
    raise InternalConsistencyError(
        "no verified sign-reversal construction on the given subset"
    )
