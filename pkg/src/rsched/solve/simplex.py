from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
import logging

import numpy as np

from rsched.data.rs_types import SENSE, SOLVE_STATUS
from rsched.errors import NumericalFailure
from rsched.model.formulation import MilpModel

logger = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
DEGENERATE_LIMIT = 50
REFACTOR_EVERY = 100


@dataclass(frozen=True)
class LpSolution:
    status: SOLVE_STATUS
    objective: Fraction | float | None = None
    values: dict[str, Fraction | float] = field(default_factory=dict)
    duals: dict[str, Fraction | float] = field(default_factory=dict)
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is SOLVE_STATUS.OPTIMAL


class _StandardForm:
    """
    min c'x s.t. Ax = b, 0 <= x <= u, b >= 0. Variables are shifted by their
    lower bound and inequality rows get a slack column. Upper bounds stay on
    the columns.
    """
    def __init__(self, model: MilpModel) -> None:
        n0 = len(model.variables)
        index = model.index
        lbs = [Fraction(v.lb) for v in model.variables]

        rows: list[dict[int, Fraction]] = []
        rhs: list[Fraction] = []
        slacks: list[tuple[int, int]] = []
        for con in model.constraints:
            row: dict[int, Fraction] = {}
            shift = Fraction(0)
            for name, a in con.coeffs:
                j = index[name]
                row[j] = row.get(j, Fraction(0)) + Fraction(a)
                shift += Fraction(a) * lbs[j]
            if con.sense is not SENSE.EQ:
                slacks.append((len(rows), 1 if con.sense is SENSE.LE else -1))
            rows.append({j: a for j, a in row.items() if a})
            rhs.append(Fraction(con.rhs) - shift)
        for k, (i, s) in enumerate(slacks):
            rows[i][n0 + k] = Fraction(s)

        self.sign = [1] * len(rows)
        for i in range(len(rows)):
            if rhs[i] < 0:
                rows[i] = {j: -a for j, a in rows[i].items()}
                rhs[i] = -rhs[i]
                self.sign[i] = -1

        self.m, self.n, self.n0 = len(rows), n0 + len(slacks), n0
        self.columns: list[dict[int, Fraction]] = [{} for _ in range(self.n)]
        for i, row in enumerate(rows):
            for j, a in row.items():
                self.columns[j][i] = a
        self.b = rhs
        self.upper: list[Fraction | None] = [
            None if v.ub is None else Fraction(v.ub) - lbs[j] for j, v in enumerate(model.variables)
        ] + [None] * len(slacks)
        self.cost = [Fraction(v.cost) for v in model.variables] + [Fraction(0)] * len(slacks)
        self.infeasible_bounds = any(u is not None and u < 0 for u in self.upper)

    def phase_data(self, phase: int) -> tuple[list[dict[int, Fraction]], list[Fraction], list[Fraction | None]]:
        """Columns, costs and upper bounds with one artificial column per row appended."""
        columns = self.columns + [{i: Fraction(1)} for i in range(self.m)]
        if phase == 1:
            return columns, [Fraction(0)] * self.n + [Fraction(1)] * self.m, self.upper + [None] * self.m
        return columns, self.cost + [Fraction(0)] * self.m, self.upper + [Fraction(0)] * self.m


def _arrays(columns, cost, upper, b, m: int, exact: bool):
    n = len(columns)
    if exact:
        A = np.full((m, n), Fraction(0), dtype=object)
        for j, col in enumerate(columns):
            for i, a in col.items():
                A[i, j] = a
        return (A, np.array(b, dtype=object).reshape(m), np.array(cost, dtype=object).reshape(n),
                np.array([u if u is not None else Fraction(0) for u in upper], dtype=object).reshape(n))
    A = np.zeros((m, n))
    for j, col in enumerate(columns):
        for i, a in col.items():
            A[i, j] = float(a)
    return (A, np.array([float(v) for v in b]).reshape(m), np.array([float(v) for v in cost]).reshape(n),
            np.array([float(u) if u is not None else 0.0 for u in upper]).reshape(n))


class _BoundedSimplex:
    """
    Revised simplex with implicit upper bounds: a nonbasic column sits at zero
    or at its upper bound, and the ratio test includes the bound flip of the
    entering column.
    """
    def __init__(self, A, b, ub, has_ub, exact: bool, tol: float, max_iter: int) -> None:
        m, n = A.shape
        self.A, self.b, self.ub, self.has_ub = A, b, ub, has_ub
        self.exact = exact
        self.tol = 0 if exact else tol
        self.pivot_tol = 0 if exact else PIVOT_TOL
        self.max_iter = max_iter
        self.iterations = 0
        self.bland = False
        self.basis = list(range(n - m, n))
        self.at_upper = np.zeros(n, dtype=bool)
        if exact:
            self.Binv = np.full((m, m), Fraction(0), dtype=object)
            for i in range(m):
                self.Binv[i, i] = Fraction(1)
        else:
            self.Binv = np.eye(m)
        self.x = self._primal()

    def _primal(self):
        x = np.full(self.A.shape[1], Fraction(0), dtype=object) if self.exact else np.zeros(self.A.shape[1])
        x[self.at_upper] = self.ub[self.at_upper]
        x[self.basis] = self.Binv.dot(self.b - self.A.dot(x))
        return x

    def refactor(self) -> None:
        try:
            self.Binv = np.linalg.inv(self.A[:, self.basis])
        except np.linalg.LinAlgError as e:
            raise NumericalFailure(f"basis became singular after {self.iterations} pivots") from e
        self.x = self._primal()

    def pivot(self, r: int, j: int, u) -> None:
        pivot_row = self.Binv[r] / u[r]
        self.Binv = self.Binv - np.outer(u, pivot_row)
        self.Binv[r] = pivot_row
        self.at_upper[j] = False
        self.basis[r] = j
        self.iterations += 1
        if not self.exact and self.iterations % REFACTOR_EVERY == 0:
            self.refactor()

    def duals(self, c):
        return c[self.basis].dot(self.Binv)

    def _entering(self, d, allowed):
        nonbasic = np.ones(len(d), dtype=bool)
        nonbasic[self.basis] = False
        fixed = self.has_ub & (self.ub == 0).astype(bool)
        improving = np.where(self.at_upper, (d > self.tol).astype(bool), (d < -self.tol).astype(bool))
        eligible = np.flatnonzero(allowed & nonbasic & ~fixed & improving)
        if eligible.size == 0:
            return None
        if self.bland:
            return int(eligible[0])
        if self.exact:
            return int(max(eligible, key=lambda k: (abs(d[k]), -k)))
        return int(eligible[int(np.argmax(np.abs(d[eligible])))])

    def _ratio(self, delta):
        """Smallest step over the basic columns: (step, row, leaves at upper)."""
        best = None
        xB = self.x[self.basis]
        for i in np.flatnonzero((delta > self.pivot_tol).astype(bool)):
            key = (max(xB[i] / delta[i], 0), self.basis[i])
            if best is None or key < best[0]:
                best = (key, int(i), False)
        hub = self.has_ub[self.basis]
        for i in np.flatnonzero(((delta < -self.pivot_tol).astype(bool)) & hub):
            key = (max((self.ub[self.basis[i]] - xB[i]) / -delta[i], 0), self.basis[i])
            if best is None or key < best[0]:
                best = (key, int(i), True)
        return best

    def run(self, c, allowed) -> str:
        """Pivot to optimality for cost vector c. Returns 'optimal' or 'unbounded'."""
        degenerate = 0
        while True:
            if self.iterations > self.max_iter:
                raise NumericalFailure(f"no convergence within {self.max_iter} pivots")
            d = c - self.duals(c).dot(self.A)
            j = self._entering(d, allowed)
            if j is None:
                return "optimal"
            direction = -1 if self.at_upper[j] else 1
            u = self.Binv.dot(self.A[:, j])
            delta = u * direction
            best = self._ratio(delta)
            flip = self.ub[j] if self.has_ub[j] else None
            if best is None and flip is None:
                return "unbounded"

            if flip is not None and (best is None or flip <= best[0][0]):
                step = flip
                self.x[self.basis] = self.x[self.basis] - delta * step
                self.x[j] = 0 if self.at_upper[j] else self.ub[j]
                self.at_upper[j] = not self.at_upper[j]
                self.iterations += 1
                logger.debug("pivot %d: column %d flips bound", self.iterations, j)
            else:
                (step, _), r, to_upper = best
                leaving = self.basis[r]
                self.x[self.basis] = self.x[self.basis] - delta * step
                self.x[j] = self.x[j] + direction * step
                self.x[leaving] = self.ub[leaving] if to_upper else 0
                logger.debug("pivot %d: column %d enters, row %d leaves", self.iterations, j, r)
                self.pivot(r, j, u)
                self.at_upper[leaving] = to_upper

            if step <= self.tol:
                degenerate += 1
                if degenerate > DEGENERATE_LIMIT and not self.bland:
                    logger.info("%d degenerate pivots in a row, switching to Bland's rule", degenerate)
                    self.bland = True
            else:
                degenerate = 0


@dataclass
class _Run:
    status: str
    simplex: _BoundedSimplex
    phase1: tuple[list[int], np.ndarray]
    c2: np.ndarray | None = None


def _two_phase(sf: _StandardForm, exact: bool, tol: float, max_iter: int | None) -> _Run:
    m, n = sf.m, sf.n
    columns, cost1, upper1 = sf.phase_data(1)
    _, cost2, upper2 = sf.phase_data(2)
    A, b, c1, ub = _arrays(columns, cost1, upper1, sf.b, m, exact)
    c2 = _arrays(columns, cost2, upper2, sf.b, m, exact)[2]
    has_ub = np.array([u is not None for u in upper1], dtype=bool)
    limit = max_iter or 50 * (m + n) + 1000
    simplex = _BoundedSimplex(A, b, ub, has_ub, exact, tol, limit)

    simplex.run(c1, np.ones(n + m, dtype=bool))
    if not exact:
        simplex.refactor()
    phase1 = (list(simplex.basis), simplex.at_upper.copy())
    infeasibility = c1[simplex.basis].dot(simplex.x[simplex.basis])
    if infeasibility > (0 if exact else tol * max(1.0, float(np.abs(b).max()))):
        logger.info("phase one ends with infeasibility %s", infeasibility)
        return _Run("infeasible", simplex, phase1)

    for r in range(m):
        if simplex.basis[r] < n:
            continue
        row = simplex.Binv[r].dot(A[:, :n])
        for j in range(n):
            if j not in simplex.basis and abs(row[j]) > simplex.pivot_tol:
                at_upper = bool(simplex.at_upper[j])
                simplex.pivot(r, j, simplex.Binv.dot(A[:, j]))
                simplex.at_upper[j] = False
                if at_upper:
                    simplex.x = simplex._primal()
                break

    simplex.has_ub[n:] = True
    simplex.ub[n:] = 0
    allowed = np.concatenate([np.ones(n, dtype=bool), np.zeros(m, dtype=bool)])
    status = simplex.run(c2, allowed)
    if not exact:
        simplex.refactor()
    return _Run(status, simplex, phase1, c2)


def _sparse_solve(rows: list[dict[int, Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan elimination on row dicts over the unknowns 0..m-1. None when singular."""
    rows = [dict(r) for r in rows]
    rhs = list(rhs)
    m = len(rows)
    holders: dict[int, set[int]] = defaultdict(set)
    for i, row in enumerate(rows):
        for k in row:
            holders[k].add(i)
    used = [False] * m
    pivot_of: dict[int, int] = {}
    for k in sorted(range(m), key=lambda k: (len(holders[k]), k)):
        free = [i for i in holders[k] if not used[i]]
        if not free:
            return None
        p = min(free, key=lambda i: (len(rows[i]), i))
        used[p] = True
        pivot_of[k] = p
        a = rows[p][k]
        for i in list(holders[k]):
            if i == p:
                continue
            f = rows[i][k] / a
            for col, v in rows[p].items():
                w = rows[i].get(col, 0) - f * v
                if w:
                    rows[i][col] = w
                    holders[col].add(i)
                elif col in rows[i]:
                    del rows[i][col]
                    holders[col].discard(i)
            rhs[i] -= f * rhs[p]
    return [rhs[pivot_of[k]] / rows[pivot_of[k]][k] for k in range(m)]


def _certify(columns, cost, upper, b, basis: list[int], at_upper) -> tuple[dict[int, Fraction], list[Fraction]] | None:
    """
    Recompute a basic solution in rationals and check that it is primal and
    dual feasible. Returns the nonzero column values and the row duals.
    """
    m = len(b)
    rhs = list(b)
    raised = [int(j) for j in np.flatnonzero(at_upper)]
    for j in raised:
        for i, a in columns[j].items():
            rhs[i] -= upper[j] * a
    eqs: list[dict[int, Fraction]] = [{} for _ in range(m)]
    for k, j in enumerate(basis):
        for i, a in columns[j].items():
            eqs[i][k] = a
    xB = _sparse_solve(eqs, rhs)
    if xB is None:
        return None
    for k, j in enumerate(basis):
        if xB[k] < 0 or (upper[j] is not None and xB[k] > upper[j]):
            return None
    y = _sparse_solve([columns[j] for j in basis], [cost[j] for j in basis])
    if y is None:
        return None
    in_basis = set(basis)
    for j, col in enumerate(columns):
        if j in in_basis or upper[j] == 0:
            continue
        d = cost[j] - sum((y[i] * a for i, a in col.items()), Fraction(0))
        if (d > 0) if at_upper[j] else (d < 0):
            return None
    x = {j: upper[j] for j in raised}
    x.update({j: xB[k] for k, j in enumerate(basis) if xB[k]})
    return x, y


def _bound_only(model: MilpModel, exact: bool) -> LpSolution:
    values = {}
    for v in model.variables:
        if v.cost < 0:
            if v.ub is None:
                return LpSolution(SOLVE_STATUS.UNBOUNDED)
            x = v.ub
        else:
            x = v.lb
        values[v.name] = Fraction(x) if exact else float(x)
    return LpSolution(SOLVE_STATUS.OPTIMAL, _objective(model, values, exact), values, {})


def solve_lp(model: MilpModel, tol: float = 1e-7, exact: bool = False, max_iter: int | None = None) -> LpSolution:
    """
    Solve the LP relaxation of a model with a two-phase bounded revised simplex.

    Exact mode solves in floats first and confirms the final basis in rational
    arithmetic; only when that check fails does the whole solve rerun on rationals.
    """
    sf = _StandardForm(model)
    if sf.infeasible_bounds:
        return LpSolution(SOLVE_STATUS.INFEASIBLE)
    if sf.m == 0:
        return _bound_only(model, exact)

    run = _two_phase(sf, False, tol, max_iter)
    if not exact:
        return _float_solution(model, sf, run)

    if run.status == "infeasible":
        columns, cost1, upper1 = sf.phase_data(1)
        certified = _certify(columns, cost1, upper1, sf.b, *run.phase1)
        if certified is not None and sum(certified[0].get(j, 0) for j in range(sf.n, sf.n + sf.m)) > 0:
            return LpSolution(SOLVE_STATUS.INFEASIBLE, iterations=run.simplex.iterations)
    elif run.status == "optimal":
        columns, cost2, upper2 = sf.phase_data(2)
        certified = _certify(columns, cost2, upper2, sf.b, run.simplex.basis, run.simplex.at_upper)
        if certified is not None:
            x, y = certified
            return _solution(model, sf, x, y, True, run.simplex.iterations)

    logger.info("rational check of the float basis failed on %s, solving in rationals", model.name)
    run = _two_phase(sf, True, tol, max_iter)
    if run.status == "infeasible":
        return LpSolution(SOLVE_STATUS.INFEASIBLE, iterations=run.simplex.iterations)
    if run.status == "unbounded":
        return LpSolution(SOLVE_STATUS.UNBOUNDED, iterations=run.simplex.iterations)
    s = run.simplex
    x = {j: s.x[j] for j in range(sf.n) if s.x[j]}
    return _solution(model, sf, x, list(s.duals(run.c2)), True, s.iterations)


def _float_solution(model: MilpModel, sf: _StandardForm, run: _Run) -> LpSolution:
    s = run.simplex
    if run.status == "infeasible":
        return LpSolution(SOLVE_STATUS.INFEASIBLE, iterations=s.iterations)
    if run.status == "unbounded":
        return LpSolution(SOLVE_STATUS.UNBOUNDED, iterations=s.iterations)
    x = {j: float(s.x[j]) for j in range(sf.n0)}
    return _solution(model, sf, x, [float(v) for v in s.duals(run.c2)], False, s.iterations)


def _solution(model: MilpModel, sf: _StandardForm, x: dict, y: list, exact: bool, iterations: int) -> LpSolution:
    values = {}
    for j, v in enumerate(model.variables):
        values[v.name] = Fraction(v.lb) + x.get(j, 0) if exact else float(v.lb) + float(x.get(j, 0.0))
    duals = {con.name: y[i] * sf.sign[i] for i, con in enumerate(model.constraints)}
    logger.info("LP %s optimal after %d pivots", model.name, iterations)
    return LpSolution(SOLVE_STATUS.OPTIMAL, _objective(model, values, exact), values, duals, iterations)


def _objective(model: MilpModel, values: dict, exact: bool):
    total = model.objective(values)
    return Fraction(total) if exact else float(total)
