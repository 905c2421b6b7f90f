from __future__ import annotations
from dataclasses import dataclass
import logging
import math

from rsched.analysis.variants import graph_for, solve_variant
from rsched.config import Settings
from rsched.data.instance import Instance
from rsched.data.rs_types import SOLVE_STATUS, VARIANT, VERDICT
from rsched.solve.oracle import feasible_projections

logger = logging.getLogger(__name__)

# relation id -> (larger side, smaller side, equal under the closure, always equal)
RELATIONS = {
    "a": ("HA", "HD", True, False),
    "b": ("hA", "hD", True, False),
    "c": ("HA", "hA", False, False),
    "d": ("HD", "hD", False, False),
    "e": ("HD", "C", False, True),
}


def relation_variants(relation: str, closure: bool) -> tuple[VARIANT, VARIANT]:
    def pick(name: str) -> VARIANT:
        if closure and name == "HA":
            return VARIANT.HA_CLOSURE
        if closure and name == "hA":
            return VARIANT.hA_CLOSURE
        return VARIANT(name)
    lhs, rhs, _, _ = RELATIONS[relation]
    return pick(lhs), pick(rhs)


@dataclass(frozen=True)
class TheoremVerdict:
    relation: str
    mode: str
    lhs_variant: VARIANT
    rhs_variant: VARIANT
    lhs: object
    rhs: object
    verdict: VERDICT

    def __str__(self) -> str:
        return f"{self.relation}) {self.mode} {self.lhs_variant.value}={self.lhs} " \
               f"{self.rhs_variant.value}={self.rhs}: {self.verdict.value}"


def judge(relation: str, lhs, rhs, closure: bool, exact: bool, tol: float = 1e-6) -> VERDICT:
    """
    Classify a pair of optimal values. Infeasible sides count as +inf. An
    equality found in float mode is reported as tolerance equality.
    """
    _, _, closure_equal, always_equal = RELATIONS[relation]
    lhs = math.inf if lhs is None else lhs
    rhs = math.inf if rhs is None else rhs
    if lhs == rhs:
        equal = True
    elif math.inf in (lhs, rhs):
        equal = False
    else:
        equal = lhs == rhs if exact else abs(lhs - rhs) <= tol * max(1.0, abs(float(rhs)))
    must_equal = always_equal or (closure_equal and closure)
    if equal:
        if not must_equal:
            return VERDICT.INEQUALITY_HOLDS
        return VERDICT.EQUALITY_HOLDS if exact or lhs == rhs else VERDICT.TOLERANCE_EQUAL
    if lhs > rhs and not must_equal:
        return VERDICT.STRICT_GAP
    return VERDICT.VIOLATION


def verdicts_from_values(values: dict[tuple[VARIANT, str], object], closure: bool, exact: bool,
                         tol: float = 1e-6) -> list[TheoremVerdict]:
    """Verdicts for every relation whose two sides are present in `values`, keyed by (variant, mode)."""
    found = []
    for mode in ("LP", "IP"):
        for relation in RELATIONS:
            lhs_v, rhs_v = relation_variants(relation, closure)
            if (lhs_v, mode) not in values or (rhs_v, mode) not in values:
                continue
            lhs, rhs = values[(lhs_v, mode)], values[(rhs_v, mode)]
            verdict = judge(relation, lhs, rhs, closure, exact, tol)
            if verdict is VERDICT.VIOLATION:
                logger.error("relation %s fails in %s: %s=%s, %s=%s", relation, mode, lhs_v.value, lhs,
                             rhs_v.value, rhs)
            found.append(TheoremVerdict(relation, mode, lhs_v, rhs_v, lhs, rhs, verdict))
    return found


def verify_theorem1(instance: Instance, mode: str, closure: bool, settings: Settings | None = None,
                    connection_constraints: bool = True) -> list[TheoremVerdict]:
    """Solve the five variants a relation set needs and judge every relation in one mode."""
    if mode not in ("LP", "IP"):
        raise ValueError(f"mode must be LP or IP, got {mode!r}")
    settings = settings or Settings(exact=True)
    needed = {v for r in RELATIONS for v in relation_variants(r, closure)}
    values = {}
    for variant in sorted(needed, key=lambda v: list(VARIANT).index(v)):
        solved = solve_variant(instance, variant, relax=mode == "LP", settings=settings,
                               connection_constraints=connection_constraints or variant is VARIANT.C)
        values[(variant, mode)] = solved.solution.objective if solved.solution.status is SOLVE_STATUS.OPTIMAL \
            else None
    return verdicts_from_values(values, closure, settings.exact, settings.tol)


@dataclass(frozen=True)
class ProjectionReport:
    ha_closure: frozenset[frozenset[str]]
    hd: frozenset[frozenset[str]]
    c: frozenset[frozenset[str]]

    @property
    def equal(self) -> bool:
        return self.ha_closure == self.hd == self.c

    @property
    def hd_extra(self) -> frozenset[frozenset[str]]:
        """Projected depot-model solutions the composition model does not have."""
        return self.hd - self.c


def verify_corollary_projection(instance: Instance, connection_constraints: bool = True,
                                settings: Settings | None = None) -> ProjectionReport:
    """
    Enumerate the integer solutions of HĀ, HD and C, keep their trip and change
    arcs, and compare the resulting sets. Dropping the connection constraints
    applies to the hypergraph variants only.
    """
    settings = settings or Settings(exact=True)
    found = {}
    for variant in (VARIANT.HA_CLOSURE, VARIANT.HD, VARIANT.C):
        keep = connection_constraints or variant is VARIANT.C
        found[variant] = frozenset(feasible_projections(graph_for(instance, variant), keep, settings))
    report = ProjectionReport(found[VARIANT.HA_CLOSURE], found[VARIANT.HD], found[VARIANT.C])
    logger.info("projection sets: HĀ %d, HD %d, C %d, equal %s", len(report.ha_closure), len(report.hd),
                len(report.c), report.equal)
    return report
