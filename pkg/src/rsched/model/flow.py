from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
import logging

import networkx as nx

from rsched.errors import DecompositionFailure, NonConservingInput
from rsched.model.hypergraph import Hypergraph, Node

logger = logging.getLogger(__name__)

Hyperflow = dict[str, Fraction | float | int]
BaseFlow = dict[tuple[Node, Node], Fraction | float | int]


@dataclass(frozen=True)
class UnitPath:
    nodes: tuple[Node, ...]

    @property
    def arcs(self) -> tuple[tuple[Node, Node], ...]:
        return tuple(zip(self.nodes, self.nodes[1:]))

    @property
    def unit_type(self) -> str:
        return self.nodes[0].unit_type

    def __str__(self) -> str:
        return " -> ".join(v.label for v in self.nodes)


@dataclass(frozen=True)
class Decomposition:
    paths: tuple[UnitPath, ...]
    loops: tuple[UnitPath, ...]

    def incidence(self) -> BaseFlow:
        """Arc-incidence sum of all paths and loops."""
        found: BaseFlow = defaultdict(int)
        for p in (*self.paths, *self.loops):
            for a in p.arcs:
                found[a] += 1
        return dict(found)


def project_base_flow(g: Hypergraph, x: Hyperflow, tol: float = 0.0) -> BaseFlow:
    """
    Expand a hyperflow into base-arc flows, x'_a = sum of x_h over the
    hyperarcs containing a. The input must conserve flow on `g`.
    """
    residuals = g.conservation_residuals(x, tol)
    if residuals:
        worst = sorted(residuals, key=Node.sort_key)[0]
        raise NonConservingInput(f"flow is not conserved at {worst.label} (off by {residuals[worst]})")
    base: BaseFlow = defaultdict(int)
    for h in g.hyperarcs:
        value = x.get(h.id, 0)
        if value:
            for a in h.base_arcs:
                base[a] += value
    return dict(base)


def base_residuals(g: Hypergraph, base: BaseFlow) -> dict[Node, object]:
    net: dict[Node, object] = defaultdict(int)
    for (a, b), value in base.items():
        net[a] += value
        net[b] -= value
    return {v: net.get(v, 0) - g.balances.get(v, 0) for v in g.nodes if net.get(v, 0) != g.balances.get(v, 0)}


def _integral(value) -> int:
    as_int = round(value)
    if abs(value - as_int) > 1e-9:
        raise DecompositionFailure(f"flow value {value} is not integral")
    return int(as_int)


def decompose_paths(g: Hypergraph, x: Hyperflow) -> Decomposition:
    """
    Split an integer hyperflow into unit paths from supply nodes to demand
    nodes of the base graph, plus any closed loops left over.
    """
    try:
        base = project_base_flow(g, x, tol=1e-9)
    except NonConservingInput as e:
        raise DecompositionFailure(str(e)) from e

    graph = nx.MultiDiGraph()
    for (a, b), value in sorted(base.items(), key=lambda e: (e[0][0].sort_key(), e[0][1].sort_key())):
        units = _integral(value)
        if units:
            graph.add_edge(a, b, flow=units)
    supply = {v: b for v, b in g.balances.items() if b > 0}
    demand = {v: -b for v, b in g.balances.items() if b < 0}

    def take_edge(node: Node) -> Node | None:
        for _, head, key, data in sorted(graph.out_edges(node, keys=True, data=True),
                                         key=lambda e: e[1].sort_key()):
            if data["flow"] > 0:
                data["flow"] -= 1
                if data["flow"] == 0:
                    graph.remove_edge(node, head, key)
                return head
        return None

    paths = []
    for source in sorted(supply, key=Node.sort_key):
        while supply[source] > 0:
            walk = [source]
            node = source
            while True:
                if len(walk) > 1 and demand.get(node, 0) > 0:
                    demand[node] -= 1
                    break
                nxt = take_edge(node)
                if nxt is None:
                    if demand.get(node, 0) > 0:
                        demand[node] -= 1
                        break
                    raise DecompositionFailure(f"walk from {source.label} got stuck at {node.label}")
                walk.append(nxt)
                node = nxt
            supply[source] -= 1
            paths.append(UnitPath(tuple(walk)))

    loops = []
    while graph.number_of_edges():
        start = min(graph.nodes, key=lambda v: (graph.out_degree(v) == 0, v.sort_key()))
        walk = [start]
        node = start
        while True:
            nxt = take_edge(node)
            if nxt is None:
                raise DecompositionFailure(f"leftover flow at {node.label} is not a loop")
            walk.append(nxt)
            node = nxt
            if node == start:
                break
        loops.append(UnitPath(tuple(walk)))
        graph.remove_nodes_from([v for v in list(graph.nodes) if graph.degree(v) == 0])
    logger.debug("decomposed into %d paths and %d loops", len(paths), len(loops))
    return Decomposition(tuple(paths), tuple(loops))
