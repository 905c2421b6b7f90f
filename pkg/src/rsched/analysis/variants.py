from __future__ import annotations
from dataclasses import dataclass
import logging

from rsched.config import Settings
from rsched.data.instance import Instance
from rsched.data.rs_types import ARC_KIND, VARIANT
from rsched.model.composition import CompositionGraph, contract
from rsched.model.formulation import MilpModel, ModelOptions, assemble
from rsched.model.hypergraph import Hyperarc, Hypergraph, build
from rsched.solve.branch_bound import IpSolution, solve_ip
from rsched.solve.simplex import LpSolution, solve_lp

logger = logging.getLogger(__name__)

Graph = Hypergraph | CompositionGraph


def graph_for(instance: Instance, variant: VARIANT) -> Graph:
    if variant is VARIANT.C:
        return contract(build(instance, VARIANT.HD))
    return build(instance, variant)


def all_arcs(g: Graph) -> list[Hyperarc]:
    if isinstance(g, CompositionGraph):
        return [*g.arcs, *g.deviation]
    return list(g.hyperarcs)


def arc_role(g: Graph, h: Hyperarc) -> str:
    """One of trip, change, depot, deviation."""
    if h.kind is ARC_KIND.INVENTORY_DEVIATION:
        return "deviation"
    if h.kind is ARC_KIND.TRIP_SERVICE:
        return "trip"
    if h.kind is ARC_KIND.CONNECTION_CHANGE:
        return "change"
    if h.kind is ARC_KIND.COMPOSITION_ARC:
        return "change" if h.connection is not None else "trip"
    return "depot"


@dataclass(frozen=True)
class VariantSolve:
    variant: VARIANT
    graph: Graph
    model: MilpModel
    solution: LpSolution | IpSolution


def solve_variant(instance: Instance, variant: VARIANT, relax: bool, settings: Settings | None = None,
                  connection_constraints: bool = True, graph: Graph | None = None) -> VariantSolve:
    """Build, assemble and solve one variant as LP or IP."""
    settings = settings or Settings()
    g = graph if graph is not None else graph_for(instance, variant)
    model = assemble(g, ModelOptions(relax=relax, connection_constraints=connection_constraints))
    if relax:
        solution = solve_lp(model, tol=settings.tol, exact=settings.exact)
    else:
        solution = solve_ip(model, tol=settings.tol, node_limit=settings.node_limit, exact=settings.exact,
                            int_tol=settings.int_tol)
    logger.info("%s %s: %s %s", variant.value, "LP" if relax else "IP", solution.status.value, solution.objective)
    return VariantSolve(variant, g, model, solution)
