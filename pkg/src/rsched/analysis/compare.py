from __future__ import annotations
from dataclasses import dataclass, field
import logging
import time

from rsched.analysis.costs import CostBreakdown, cost_breakdown
from rsched.analysis.replay import replay
from rsched.analysis.theorem import TheoremVerdict, verdicts_from_values
from rsched.analysis.variants import Graph, graph_for, solve_variant
from rsched.config import Settings
from rsched.data.instance import Instance
from rsched.data.rs_types import SOLVE_STATUS, VARIANT
from rsched.errors import NodeLimitReached, RschedError

logger = logging.getLogger(__name__)

ALL_VARIANTS = (VARIANT.hD, VARIANT.hA, VARIANT.HD, VARIANT.HA, VARIANT.hA_CLOSURE, VARIANT.HA_CLOSURE, VARIANT.C)
ILLEGAL_FLAG = "IP value infeasible under full model"
BOUND_ONLY_FLAG = "bound-only"


@dataclass(frozen=True)
class CompareOptions:
    variants: tuple[VARIANT, ...] = ALL_VARIANTS
    connection_constraints: bool = True
    closure: bool = True
    deterministic: bool = False


@dataclass
class VariantRow:
    variant: VARIANT
    variables: int = 0
    constraints: int = 0
    lp: object = None
    ip: object = None
    bound: object = None
    nodes: int = 0
    status: str = ""
    breakdown: CostBreakdown | None = None
    flags: list[str] = field(default_factory=list)
    error: str = ""
    seconds: float = 0.0
    solution: dict = field(default_factory=dict, repr=False)

    @property
    def gap(self):
        """IP value minus LP bound, the absolute integrality gap."""
        if self.ip is None or self.lp is None:
            return None
        return self.ip - self.lp


@dataclass
class ComparisonReport:
    instance: str
    options: CompareOptions
    rows: list[VariantRow] = field(default_factory=list)
    verdicts: list[TheoremVerdict] = field(default_factory=list)

    def row(self, variant: VARIANT) -> VariantRow:
        for r in self.rows:
            if r.variant is variant:
                return r
        raise KeyError(variant.value)


def _solve_row(instance: Instance, variant: VARIANT, options: CompareOptions, settings: Settings) -> VariantRow:
    row = VariantRow(variant)
    started = time.perf_counter()
    keep = options.connection_constraints or variant is VARIANT.C
    g: Graph = graph_for(instance, variant)

    lp = solve_variant(instance, variant, True, settings, keep, graph=g)
    row.variables, row.constraints = lp.model.size
    row.status = lp.solution.status.value
    if lp.solution.status is not SOLVE_STATUS.OPTIMAL:
        row.seconds = time.perf_counter() - started
        return row
    row.lp = lp.solution.objective

    try:
        ip = solve_variant(instance, variant, False, settings, keep, graph=g)
    except NodeLimitReached as e:
        row.status = SOLVE_STATUS.NODE_LIMIT.value
        row.bound = e.bound
        row.ip = e.incumbent
        row.nodes = e.partial.nodes
        row.flags.append(BOUND_ONLY_FLAG)
        row.seconds = time.perf_counter() - started
        return row
    row.status = ip.solution.status.value
    row.nodes = ip.solution.nodes
    if ip.solution.status is SOLVE_STATUS.OPTIMAL:
        row.ip = ip.solution.objective
        row.bound = ip.solution.bound
        row.solution = dict(ip.solution.values)
        row.breakdown = cost_breakdown(instance, ip)
        if not variant.full and options.connection_constraints and not replay(g, ip.solution.values).feasible:
            row.flags.append(ILLEGAL_FLAG)
    row.seconds = time.perf_counter() - started
    return row


def compare(instance: Instance, options: CompareOptions | None = None,
            settings: Settings | None = None) -> ComparisonReport:
    """
    Solve every requested variant as LP and IP and tabulate sizes, values,
    cost components and the relations between the values. A variant that
    fails leaves an error entry in its row.
    """
    options = options or CompareOptions()
    settings = settings or Settings()
    report = ComparisonReport(instance.name, options)
    for variant in options.variants:
        try:
            row = _solve_row(instance, variant, options, settings)
        except RschedError as e:
            logger.warning("%s failed: %s", variant.value, e)
            row = VariantRow(variant, status="Error", error=f"{type(e).__name__}: {e}")
        if options.deterministic:
            row.seconds = 0.0
        report.rows.append(row)

    values = {}
    for row in report.rows:
        if row.error or BOUND_ONLY_FLAG in row.flags:
            continue
        values[(row.variant, "LP")] = row.lp
        values[(row.variant, "IP")] = row.ip
    report.verdicts = verdicts_from_values(values, options.closure, settings.exact, settings.tol)
    return report
