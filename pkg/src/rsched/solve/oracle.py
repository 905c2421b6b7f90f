from __future__ import annotations
from collections import defaultdict
from fractions import Fraction
from itertools import combinations, product
import logging
from typing import Iterator

import networkx as nx

from rsched.config import Settings
from rsched.data.rs_types import ARC_KIND, SOLVE_STATUS
from rsched.errors import LimitExceeded
from rsched.model.composition import CompositionGraph
from rsched.model.formulation import ModelOptions
from rsched.model.hypergraph import Hyperarc, Hypergraph, Node
from rsched.solve.branch_bound import IpSolution

logger = logging.getLogger(__name__)


def check_limits(g: Hypergraph | CompositionGraph, settings: Settings) -> None:
    inst = g.instance
    if len(inst.trips) > settings.oracle_max_trips:
        raise LimitExceeded(f"{len(inst.trips)} trips, the oracle handles at most {settings.oracle_max_trips}")
    units: dict[str, int] = defaultdict(int)
    for d in inst.depots:
        units[d.unit_type] += d.start_inventory
    too_many = {r: n for r, n in units.items() if n > settings.oracle_max_units}
    if too_many:
        raise LimitExceeded(f"unit counts {too_many} exceed {settings.oracle_max_units} per type")


def _disjoint(arcs: tuple) -> bool:
    seen = set()
    for h in arcs:
        nodes = h.tails | h.heads
        if nodes & seen:
            return False
        seen |= nodes
    return True


def structural_assignments(g: Hypergraph | CompositionGraph, connection_constraints: bool) -> Iterator[frozenset[str]]:
    """
    Every choice of one trip arc per trip together with the composition
    changes consistent with it: exactly one per connection, or any
    node-disjoint subset when the connection constraints are dropped.
    """
    trips = list(g.trip_index)
    for combo in product(*(g.trip_index[t] for t in trips)):
        chosen = [g.arc(a) for a in combo]
        departures = set().union(*(h.tails for h in chosen)) if chosen else set()
        arrivals = set().union(*(h.heads for h in chosen)) if chosen else set()
        options = []
        for c, ids in g.connection_index.items():
            fits = [g.arc(i) for i in ids if g.arc(i).tails <= arrivals and g.arc(i).heads <= departures]
            if connection_constraints:
                options.append([(h,) for h in fits])
            else:
                subsets = [s for k in range(len(fits) + 1) for s in combinations(fits, k) if _disjoint(s)]
                options.append(subsets)
        for picks in product(*options):
            yield frozenset(combo) | frozenset(h.id for group in picks for h in group)


class _DepotCompletion:
    """
    Cheapest way to close the depot side of a fixed trip and change choice.
    Units not carried on by a chosen change are pulled in, units a chosen
    trip needs beyond them are pulled out; what remains is checking the
    inventories and charging the end deviations.
    """
    def __init__(self, g: Hypergraph | CompositionGraph) -> None:
        self.__g = g
        self.__inst = g.instance
        self.__pull_in: dict[Node, Hyperarc] = {}
        self.__pull_out: dict[Node, Hyperarc] = {}
        self.__direct: dict[tuple[str, str], list[Hyperarc]] = defaultdict(list)
        if isinstance(g, Hypergraph):
            for h in g.hyperarcs:
                if h.kind is ARC_KIND.PULL_IN:
                    self.__pull_in[h.base_arcs[0][0]] = h
                elif h.kind is ARC_KIND.PULL_OUT:
                    self.__pull_out[h.base_arcs[0][1]] = h
                elif h.kind is ARC_KIND.DIRECT:
                    self.__direct[h.depot].append(h)

    def cost(self, chosen: frozenset[str]) -> Fraction | None:
        """Completion cost, or None when no depot flow completes the choice."""
        arcs = [self.__g.arc(a) for a in chosen]
        if isinstance(self.__g, CompositionGraph):
            events = defaultdict(list)
            for a in chosen:
                for m in self.__g.moves.get(a, ()):
                    events[m.depot].append((m.time, m.count if m.pull_in else -m.count))
            return self.__close(events, Fraction(0), replay=True)

        trip_arcs = [h for h in arcs if h.kind is ARC_KIND.TRIP_SERVICE]
        changes = [h for h in arcs if h.kind is not ARC_KIND.TRIP_SERVICE]
        carried_off = set().union(*(h.tails for h in changes)) if changes else set()
        carried_in = set().union(*(h.heads for h in changes)) if changes else set()
        events = defaultdict(list)
        cost = Fraction(0)
        open_in, open_out = defaultdict(set), defaultdict(set)
        for h in trip_arcs:
            for dep, arr in h.base_arcs:
                if arr not in carried_off:
                    pull = self.__pull_in.get(arr)
                    if pull is None:
                        return None
                    cost += pull.cost
                    events[pull.depot].append((arr.time, 1))
                    open_in[pull.depot].add(arr)
                if dep not in carried_in:
                    pull = self.__pull_out.get(dep)
                    if pull is None:
                        return None
                    cost += pull.cost
                    events[pull.depot].append((dep.time, -1))
                    open_out[pull.depot].add(dep)

        if not self.__g.variant.direct:
            return self.__close(events, cost, replay=True)
        # without timelines a pull-out draws on the start inventory unless a
        # direct arc hands it a unit pulled in earlier; a direct arc costs
        # its pull-in plus its pull-out
        for key, outs in open_out.items():
            matched = self.__matched(key, open_in[key], outs)
            if len(outs) - matched > self.__inst.require_depot(*key).start_inventory:
                return None
        return self.__close(events, cost, replay=False)

    def __matched(self, key: tuple[str, str], ins: set[Node], outs: set[Node]) -> int:
        graph = nx.Graph()
        for h in self.__direct.get(key, ()):
            a, b = h.base_arcs[0]
            if a in ins and b in outs:
                graph.add_edge(("in", a), ("out", b))
        if not graph.number_of_edges():
            return 0
        top = [v for v in graph if v[0] == "in"]
        return len(nx.bipartite.hopcroft_karp_matching(graph, top_nodes=top)) // 2

    def __close(self, events: dict, cost: Fraction, replay: bool) -> Fraction | None:
        inst = self.__inst
        for depot in inst.depots:
            level = depot.start_inventory
            for _, delta in sorted(events.get(depot.key, ()), key=lambda e: (e[0], e[1] < 0)):
                level += delta
                if replay and level < 0:
                    return None
            if inst.strict_end_inventory:
                if level != depot.target_end_inventory:
                    return None
                continue
            cost += abs(level - depot.target_end_inventory) * inst.cost_params.ending_deviation_per_unit
        return cost


def enumerate_oracle(g: Hypergraph | CompositionGraph, opts: ModelOptions | None = None,
                     settings: Settings | None = None) -> IpSolution:
    """
    Ground truth by exhaustion: fix every trip and change choice, close the
    depot side by replaying the inventories, keep the cheapest schedule. The
    values hold the trip and change arcs of that schedule.
    """
    opts = opts or ModelOptions()
    settings = settings or Settings()
    check_limits(g, settings)
    completion = _DepotCompletion(g)

    best: tuple[Fraction, frozenset[str]] | None = None
    evaluated = 0
    for chosen in structural_assignments(g, opts.connection_constraints):
        evaluated += 1
        closing = completion.cost(chosen)
        if closing is None:
            continue
        total = sum((Fraction(g.arc(a).cost) for a in chosen), closing)
        if best is None or total < best[0]:
            best = (total, chosen)
    logger.info("oracle evaluated %d assignments on %s", evaluated, g.instance.name or "instance")
    if best is None:
        return IpSolution(SOLVE_STATUS.INFEASIBLE, nodes=evaluated)
    values = {a: Fraction(1) for a in sorted(best[1])}
    return IpSolution(SOLVE_STATUS.OPTIMAL, best[0], values, best[0], evaluated)


def feasible_projections(g: Hypergraph | CompositionGraph, connection_constraints: bool = True,
                         settings: Settings | None = None) -> set[frozenset[str]]:
    """Trip and change arcs used by integer solutions, one set per solution."""
    settings = settings or Settings()
    check_limits(g, settings)
    completion = _DepotCompletion(g)
    return {chosen for chosen in structural_assignments(g, connection_constraints)
            if completion.cost(chosen) is not None}
