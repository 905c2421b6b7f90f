from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
import logging

from rsched.data.instance import Instance
from rsched.data.rs_types import ARC_KIND, EVENT_SIDE, NODE_KIND, VARIANT
from rsched.errors import VariantMismatch
from rsched.model.hypergraph import Hyperarc, Hypergraph, Node

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DepotMove:
    """Units of one type entering (pull-in) or leaving (pull-out) a depot at a time."""
    depot: tuple[str, str]
    time: int
    count: int
    pull_in: bool


@dataclass(frozen=True)
class DepotCut:
    node: Node
    depot: tuple[str, str]
    preceding: tuple[Node, ...]
    initial_balance: int
    pull_out: tuple[tuple[str, int], ...]
    pull_in: tuple[tuple[str, int], ...]

    def available(self, x: dict):
        """Units left in the depot right after this node for composition-arc values x."""
        return self.initial_balance - sum((nu * x.get(h, 0) for h, nu in self.pull_out), 0) + \
            sum((nu * x.get(h, 0) for h, nu in self.pull_in), 0)


@dataclass(frozen=True, eq=False)
class CompositionGraph:
    instance: Instance
    source: Hypergraph
    nodes: tuple[Node, ...]
    arcs: tuple[Hyperarc, ...]
    backrefs: dict[str, tuple[str, ...]]
    moves: dict[str, tuple[DepotMove, ...]]
    timelines: dict[tuple[str, str], tuple[Node, ...]]
    trip_index: dict[str, tuple[str, ...]]
    connection_index: dict[str, tuple[str, ...]]
    deviation: tuple[Hyperarc, ...] = field(default_factory=tuple)

    @cached_property
    def arcs_by_id(self) -> dict[str, Hyperarc]:
        return {h.id: h for h in self.arcs}

    def arc(self, arc_id: str) -> Hyperarc:
        return self.arcs_by_id[arc_id]

    @cached_property
    def out_arcs(self) -> dict[Node, list[Hyperarc]]:
        found: dict[Node, list[Hyperarc]] = defaultdict(list)
        for h in self.arcs:
            for v in h.tails:
                found[v].append(h)
        return found

    @cached_property
    def in_arcs(self) -> dict[Node, list[Hyperarc]]:
        found: dict[Node, list[Hyperarc]] = defaultdict(list)
        for h in self.arcs:
            for v in h.heads:
                found[v].append(h)
        return found

    def conserving_nodes(self) -> list[Node]:
        """Composition nodes with both incoming and outgoing arcs."""
        return [v for v in self.nodes if self.in_arcs.get(v) and self.out_arcs.get(v)]


def _composition_node(v: Node) -> Node:
    return Node(NODE_KIND.EVENT, trip=v.trip, side=v.side, composition=v.composition, time=v.time)


def _line_end_moves(instance: Instance, h: Hyperarc) -> tuple[DepotMove, ...]:
    trip = instance.trip(h.trip)
    units = instance.composition(h.compositions[0]).units
    counts: dict[str, int] = defaultdict(int)
    for r in units:
        counts[r] += 1
    moves = []
    if instance.predecessor_connection(trip.id) is None:
        moves += [DepotMove((trip.dep_station, r), trip.dep_time, n, False) for r, n in sorted(counts.items())]
    if instance.successor_connection(trip.id) is None:
        moves += [DepotMove((trip.arr_station, r), trip.arr_time, n, True) for r, n in sorted(counts.items())]
    return tuple(moves)


def _change_moves(instance: Instance, h: Hyperarc) -> tuple[DepotMove, ...]:
    moves = []
    if h.uncouple_trip is not None:
        pred = instance.trip(h.uncouple_trip)
        moves += [DepotMove((pred.arr_station, r), pred.arr_time, n, True) for r, n in h.nu_in if n]
    if h.couple_trip is not None:
        succ = instance.trip(h.couple_trip)
        moves += [DepotMove((succ.dep_station, r), succ.dep_time, n, False) for r, n in h.nu_out if n]
    return tuple(moves)


def contract(g_hd: Hypergraph) -> CompositionGraph:
    """
    Contract the composition-resolved depot hypergraph: event nodes that only
    differ in unit type and position merge into one node per (trip event,
    composition), parallel arcs collapse, and depot arcs are dropped.
    """
    if g_hd.variant is not VARIANT.HD:
        raise VariantMismatch(f"contract needs an HD hypergraph, got {g_hd.variant.value}")
    inst = g_hd.instance

    arcs: list[Hyperarc] = []
    backrefs: dict[str, tuple[str, ...]] = {}
    moves: dict[str, tuple[DepotMove, ...]] = {}
    seen: dict[tuple, str] = {}
    for h in g_hd.hyperarcs:
        if h.kind not in (ARC_KIND.TRIP_SERVICE, ARC_KIND.CONNECTION_CHANGE):
            continue
        base = tuple(dict.fromkeys((_composition_node(a), _composition_node(b)) for a, b in h.base_arcs))
        key = (h.connection or h.trip, frozenset(base))
        if key in seen:
            other = g_hd.arc(seen[key])
            assert other.cost == h.cost, f"parallel arcs {other.id} and {h.id} carry different costs"
            backrefs[seen[key]] += (h.id,)
            continue
        seen[key] = h.id
        arcs.append(Hyperarc(h.id, ARC_KIND.COMPOSITION_ARC, base, h.cost, trip=h.trip, connection=h.connection,
                             compositions=h.compositions, nu_in=h.nu_in, nu_out=h.nu_out, actions=h.actions,
                             uncouple_trip=h.uncouple_trip, couple_trip=h.couple_trip))
        backrefs[h.id] = (h.id,)
        if h.kind is ARC_KIND.TRIP_SERVICE:
            moves[h.id] = _line_end_moves(inst, h)
        else:
            moves[h.id] = _change_moves(inst, h)

    nodes: dict[Node, None] = {}
    for h in arcs:
        for a, b in h.base_arcs:
            nodes.setdefault(a)
            nodes.setdefault(b)
    deviation = tuple(g_hd.arcs_of_kind(ARC_KIND.INVENTORY_DEVIATION))
    logger.debug("contracted HD into %d composition nodes and %d arcs", len(nodes), len(arcs))
    return CompositionGraph(
        instance=inst,
        source=g_hd,
        nodes=tuple(sorted(nodes, key=lambda v: (v.time, v.trip, v.side is EVENT_SIDE.ARR, v.composition))),
        arcs=tuple(arcs),
        backrefs=backrefs,
        moves={k: v for k, v in moves.items() if v},
        timelines=dict(g_hd.timelines),
        trip_index=dict(g_hd.trip_index),
        connection_index=dict(g_hd.connection_index),
        deviation=deviation,
    )


def cut_data(cg: CompositionGraph) -> dict[Node, DepotCut]:
    """
    For every depot timeline node v: the arcs pulling units of v's type out of
    or into the depot at or before v, with their unit counts.
    """
    inst = cg.instance
    by_depot: dict[tuple[str, str], list[tuple[str, DepotMove]]] = defaultdict(list)
    for arc_id, found in cg.moves.items():
        for m in found:
            by_depot[m.depot].append((arc_id, m))

    cuts: dict[Node, DepotCut] = {}
    for key, timeline in cg.timelines.items():
        depot = inst.require_depot(*key)
        for i, v in enumerate(timeline):
            pull_out: dict[str, int] = defaultdict(int)
            pull_in: dict[str, int] = defaultdict(int)
            for arc_id, m in by_depot.get(key, ()):
                if _ordinal_of(timeline, m.time) <= v.ordinal:
                    (pull_in if m.pull_in else pull_out)[arc_id] += m.count
            cuts[v] = DepotCut(
                node=v,
                depot=key,
                preceding=tuple(timeline[:i + 1]),
                initial_balance=depot.start_inventory,
                pull_out=tuple(sorted(pull_out.items())),
                pull_in=tuple(sorted(pull_in.items())),
            )
    return cuts


def _ordinal_of(timeline: tuple[Node, ...], time: int) -> int:
    for v in timeline[1:-1]:
        if v.time == time:
            return v.ordinal
    raise KeyError(f"no timeline node at time {time}")
