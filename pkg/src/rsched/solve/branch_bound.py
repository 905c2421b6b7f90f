from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
import logging
import math

from rsched.data.rs_types import SOLVE_STATUS
from rsched.errors import NodeLimitReached
from rsched.model.formulation import MilpModel
from rsched.solve.simplex import solve_lp

logger = logging.getLogger(__name__)

RESTART_EVERY = 1000


@dataclass(frozen=True)
class IpSolution:
    status: SOLVE_STATUS
    objective: Fraction | float | None = None
    values: dict[str, Fraction | float | int] = field(default_factory=dict)
    bound: Fraction | float | None = None
    nodes: int = 0
    root_bound: Fraction | float | None = None

    @property
    def optimal(self) -> bool:
        return self.status is SOLVE_STATUS.OPTIMAL


def _branch_variable(model: MilpModel, values: dict, int_tol: float) -> tuple[int, object] | None:
    """Most fractional integer variable, ties broken by the smallest index."""
    best = None
    for j, v in enumerate(model.variables):
        if not v.integer:
            continue
        x = values[v.name]
        frac = x - math.floor(x)
        if min(frac, 1 - frac) <= int_tol:
            continue
        score = abs(frac - Fraction(1, 2)) if isinstance(frac, Fraction) else abs(frac - 0.5)
        if best is None or score < best[0]:
            best = (score, j, x)
    return None if best is None else (best[1], best[2])


def _rounded(model: MilpModel, values: dict, exact: bool) -> dict:
    out = {}
    for v in model.variables:
        x = values[v.name]
        if v.integer:
            out[v.name] = int(round(x))
        else:
            out[v.name] = x
    return out


def solve_ip(model: MilpModel, tol: float = 1e-7, node_limit: int = 100_000, exact: bool = False,
             int_tol: float = 1e-6) -> IpSolution:
    """
    Depth-first branch and bound on the LP relaxation. The floor branch is
    explored first; every RESTART_EVERY nodes the open list is reordered by bound.
    Raises NodeLimitReached with the best incumbent and bound when the limit hits.
    """
    int_tol = 0 if exact else int_tol
    slack = 0 if exact else tol
    root = solve_lp(model, tol=tol, exact=exact)
    if root.status is not SOLVE_STATUS.OPTIMAL:
        return IpSolution(root.status, nodes=1)

    base_bounds = {v.name: (v.lb, v.ub) for v in model.variables}
    stack: list[tuple[object, dict]] = [(root.objective, {})]
    incumbent: dict | None = None
    best = None
    nodes = 0
    first = True

    while stack:
        if nodes >= node_limit:
            bound = min([b for b, _ in stack] + ([best] if best is not None else []))
            partial = IpSolution(SOLVE_STATUS.NODE_LIMIT, best, incumbent or {}, bound, nodes, root.objective)
            logger.warning("node limit %d reached on %s, best %s, bound %s", node_limit, model.name, best, bound)
            raise NodeLimitReached(partial)
        if nodes and nodes % RESTART_EVERY == 0:
            stack.sort(key=lambda e: e[0], reverse=True)
        parent_bound, overrides = stack.pop()
        if best is not None and parent_bound >= best - slack:
            continue

        lp = root if first else solve_lp(model.with_bounds(overrides), tol=tol, exact=exact)
        first = False
        nodes += 1
        if lp.status is not SOLVE_STATUS.OPTIMAL:
            continue
        if best is not None and lp.objective >= best - slack:
            continue

        choice = _branch_variable(model, lp.values, int_tol)
        if choice is None:
            incumbent = _rounded(model, lp.values, exact)
            value = model.objective(incumbent)
            best = Fraction(value) if exact else float(value)
            logger.info("incumbent %s at node %d", best, nodes)
            continue

        j, x = choice
        name = model.variables[j].name
        lb, ub = overrides.get(name, base_bounds[name])
        down = math.floor(x)
        floor_child = {**overrides, name: (lb, Fraction(down))}
        ceil_child = {**overrides, name: (Fraction(down + 1), ub)}
        stack.append((lp.objective, ceil_child))
        stack.append((lp.objective, floor_child))

    if incumbent is None:
        logger.info("%s has no integer solution (%d nodes)", model.name, nodes)
        return IpSolution(SOLVE_STATUS.INFEASIBLE, nodes=nodes, root_bound=root.objective)
    return IpSolution(SOLVE_STATUS.OPTIMAL, best, incumbent, best, nodes, root.objective)
