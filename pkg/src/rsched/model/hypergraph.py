from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
import logging

from rsched.data.instance import Depot, DirectArcSpec, Instance, closure_arcs
from rsched.data.rs_types import ARC_KIND, CLOSURE_MODE, EVENT_SIDE, NODE_KIND, VARIANT
from rsched.errors import InfeasibleInstance, VariantMismatch
from rsched.model.changes import Change, enumerate_changes

logger = logging.getLogger(__name__)

_NODE_ORDER = {NODE_KIND.EVENT: 0, NODE_KIND.DEPOT_TIMELINE: 1, NODE_KIND.SLACK: 2}


@dataclass(frozen=True)
class Node:
    kind: NODE_KIND
    trip: str = ""
    side: EVENT_SIDE | None = None
    composition: str | None = None
    unit_type: str = ""
    position: int = 0
    station: str = ""
    time: int = 0
    ordinal: int = 0

    @property
    def label(self) -> str:
        if self.kind is NODE_KIND.SLACK:
            return f"slack.{self.unit_type}"
        if self.kind is NODE_KIND.DEPOT_TIMELINE:
            return f"d.{self.station}.{self.unit_type}.{self.ordinal}"
        parts = [f"{self.trip}{self.side.value}"]
        if self.composition is not None:
            parts.append(self.composition)
        if self.position:
            parts += [self.unit_type, str(self.position)]
        return ".".join(parts)

    def sort_key(self) -> tuple:
        return (_NODE_ORDER[self.kind], self.time, self.label)

    def project(self) -> Node:
        """Drop the composition coordinate of an event node."""
        if self.kind is NODE_KIND.EVENT and self.composition is not None:
            return replace(self, composition=None)
        return self

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Hyperarc:
    id: str
    kind: ARC_KIND
    base_arcs: tuple[tuple[Node, Node], ...]
    cost: Fraction = Fraction(0)
    upper_bound: int | None = 1
    trip: str | None = None
    connection: str | None = None
    compositions: tuple[str, ...] = ()
    nu_in: tuple[tuple[str, int], ...] = ()
    nu_out: tuple[tuple[str, int], ...] = ()
    actions: int = 0
    uncouple_trip: str | None = None
    couple_trip: str | None = None
    depot: tuple[str, str] | None = None
    copies: tuple[str, ...] = ()
    path: tuple[str, ...] = ()

    @property
    def tails(self) -> set[Node]:
        return {a for a, _ in self.base_arcs}

    @property
    def heads(self) -> set[Node]:
        return {b for _, b in self.base_arcs}

    @property
    def unbounded(self) -> bool:
        return self.upper_bound is None


@dataclass(frozen=True, eq=False)
class Hypergraph:
    variant: VARIANT
    instance: Instance
    nodes: tuple[Node, ...]
    hyperarcs: tuple[Hyperarc, ...]
    balances: dict[Node, int]
    trip_index: dict[str, tuple[str, ...]]
    connection_index: dict[str, tuple[str, ...]]
    parking: tuple[str, ...]
    timelines: dict[tuple[str, str], tuple[Node, ...]] = field(default_factory=dict)

    @cached_property
    def arcs_by_id(self) -> dict[str, Hyperarc]:
        return {h.id: h for h in self.hyperarcs}

    def arc(self, arc_id: str) -> Hyperarc:
        return self.arcs_by_id[arc_id]

    @cached_property
    def out_arcs(self) -> dict[Node, list[Hyperarc]]:
        found: dict[Node, list[Hyperarc]] = defaultdict(list)
        for h in self.hyperarcs:
            for v in h.tails:
                found[v].append(h)
        return found

    @cached_property
    def in_arcs(self) -> dict[Node, list[Hyperarc]]:
        found: dict[Node, list[Hyperarc]] = defaultdict(list)
        for h in self.hyperarcs:
            for v in h.heads:
                found[v].append(h)
        return found

    def net_outflow(self, x: dict, node: Node):
        return sum((x.get(h.id, 0) for h in self.out_arcs.get(node, ())), 0) - \
            sum((x.get(h.id, 0) for h in self.in_arcs.get(node, ())), 0)

    def conservation_residuals(self, x: dict, tol: float = 0.0) -> dict[Node, object]:
        """Nodes where outflow - inflow differs from the balance, with the difference."""
        found = {}
        for v in self.nodes:
            diff = self.net_outflow(x, v) - self.balances.get(v, 0)
            if abs(diff) > tol:
                found[v] = diff
        return found

    def balance_totals(self) -> dict[str, int]:
        totals: dict[str, int] = defaultdict(int)
        for v, b in self.balances.items():
            totals[v.unit_type] += b
        return dict(totals)

    def arcs_of_kind(self, kind: ARC_KIND) -> list[Hyperarc]:
        return [h for h in self.hyperarcs if h.kind is kind]


class _Timeline:
    """
    Time-ordered nodes of one depot: an initial node, one node per distinct
    pull-in or pull-out time, and a terminal node. A pull-in and a pull-out at
    the same time share a node, so an arriving unit can leave at that time.
    """
    def __init__(self, depot: Depot, times: set[int], start: int, end: int) -> None:
        self.depot = depot
        self.times = sorted(times)
        first = min([start, *self.times])
        last = max([end, *self.times])
        self.__nodes = [self.__node(0, first)]
        self.__nodes += [self.__node(i + 1, t) for i, t in enumerate(self.times)]
        self.__nodes.append(self.__node(len(self.times) + 1, last))

    def __node(self, ordinal: int, time: int) -> Node:
        return Node(NODE_KIND.DEPOT_TIMELINE, station=self.depot.station, unit_type=self.depot.unit_type,
                    time=time, ordinal=ordinal)

    @property
    def nodes(self) -> list[Node]:
        return self.__nodes

    @property
    def initial(self) -> Node:
        return self.__nodes[0]

    @property
    def terminal(self) -> Node:
        return self.__nodes[-1]

    def node_at(self, time: int) -> Node:
        return self.__nodes[self.times.index(time) + 1]

    def park_id(self, ordinal: int) -> str:
        return f"park.{self.depot.station}.{self.depot.unit_type}.{ordinal}"

    def park_ids(self) -> list[str]:
        return [self.park_id(i) for i in range(len(self.__nodes) - 1)]

    def park_between(self, first: Node, last: Node) -> list[str]:
        return [self.park_id(i) for i in range(first.ordinal, last.ordinal)]


def _event(trip: str, side: EVENT_SIDE, composition: str | None, unit_type: str, position: int, time: int) -> Node:
    return Node(NODE_KIND.EVENT, trip=trip, side=side, composition=composition, unit_type=unit_type,
                position=position, time=time)


class _FullBuilder:
    """
    Builds the composition-resolved hypergraph of an instance, with depot
    timelines (depot variant) or direct connection arcs (direct variant).
    """
    def __init__(self, instance: Instance, direct: bool, specs: frozenset[DirectArcSpec]) -> None:
        self.__instance = instance
        self.__direct = direct
        self.__specs = specs
        self.__arcs: list[Hyperarc] = []

    def usable_trip_arcs(self) -> dict[str, list[str]]:
        """Compositions per trip whose line-end pull-ins and pull-outs have a depot."""
        inst = self.__instance
        usable = {}
        for trip in inst.trips_by_time():
            keep = []
            for p in trip.allowed_compositions:
                units = inst.composition(p).units
                if inst.successor_connection(trip.id) is None and \
                        any(inst.depot(trip.arr_station, r) is None for r in units):
                    continue
                if inst.predecessor_connection(trip.id) is None and \
                        any(inst.depot(trip.dep_station, r) is None for r in units):
                    continue
                keep.append(p)
            if not keep:
                raise InfeasibleInstance(f"trip {trip.id} has no composition that can be operated")
            usable[trip.id] = keep
        return usable

    def usable_changes(self, usable: dict[str, list[str]]) -> dict[str, list[Change]]:
        inst = self.__instance
        found = {}
        order = sorted(inst.connections, key=lambda c: (min(inst.trip(t).dep_time for t in c.successors), c.id))
        for c in order:
            keep = []
            for ch in enumerate_changes(inst, c):
                if any(p not in usable[t] for t, p in (*ch.tails, *ch.heads)):
                    continue
                if ch.uncoupled and any(inst.depot(inst.trip(ch.uncouple_trip).arr_station, r) is None
                                        for _, r in ch.uncoupled):
                    continue
                if ch.coupled and any(inst.depot(inst.trip(ch.couple_trip).dep_station, r) is None
                                      for _, r in ch.coupled):
                    continue
                keep.append(ch)
            if not keep:
                raise InfeasibleInstance(f"connection {c.id} admits no composition change")
            found[c.id] = keep
        return found

    def build(self, variant: VARIANT) -> Hypergraph:
        inst = self.__instance
        costs = inst.cost_params
        usable = self.usable_trip_arcs()
        changes = self.usable_changes(usable)
        self.__arcs = []

        arrivals: dict[tuple[str, str], list[Node]] = defaultdict(list)  # (trip, unit type) -> arrival nodes
        departures: dict[tuple[str, str], list[Node]] = defaultdict(list)
        trip_index = {}
        for trip in inst.trips_by_time():
            ids = []
            for p in usable[trip.id]:
                units = inst.composition(p).units
                base = []
                for n, r in enumerate(units, start=1):
                    dep = _event(trip.id, EVENT_SIDE.DEP, p, r, n, trip.dep_time)
                    arr = _event(trip.id, EVENT_SIDE.ARR, p, r, n, trip.arr_time)
                    base.append((dep, arr))
                    departures[(trip.id, r)].append(dep)
                    arrivals[(trip.id, r)].append(arr)
                arc_id = f"trip.{trip.id}.{p}"
                self.__arcs.append(Hyperarc(arc_id, ARC_KIND.TRIP_SERVICE, tuple(base), inst.trip_cost(trip.id, p),
                                            trip=trip.id, compositions=(p,)))
                ids.append(arc_id)
            trip_index[trip.id] = tuple(ids)

        connection_index = {}
        for c_id, found in changes.items():
            for ch in found:
                base = tuple(
                    (_event(m.pred_trip, EVENT_SIDE.ARR, m.pred_composition, m.unit_type, m.pred_position,
                            inst.trip(m.pred_trip).arr_time),
                     _event(m.succ_trip, EVENT_SIDE.DEP, m.succ_composition, m.unit_type, m.succ_position,
                            inst.trip(m.succ_trip).dep_time))
                    for m in ch.moves
                )
                self.__arcs.append(Hyperarc(
                    ch.id, ARC_KIND.CONNECTION_CHANGE, base, costs.shunting_per_action * ch.actions,
                    connection=c_id, compositions=tuple(p for _, p in (*ch.tails, *ch.heads)),
                    nu_in=tuple(sorted(ch.nu_in.items())), nu_out=tuple(sorted(ch.nu_out.items())),
                    actions=ch.actions,
                    uncouple_trip=ch.uncouple_trip, couple_trip=ch.couple_trip,
                ))
            connection_index[c_id] = tuple(ch.id for ch in found)

        # depot events
        event_times: dict[tuple[str, str], set[int]] = defaultdict(set)
        pull_ins: list[tuple[Node, Depot]] = []
        pull_outs: list[tuple[Node, Depot]] = []
        for (trip_id, r), nodes in arrivals.items():
            trip = inst.trip(trip_id)
            depot = inst.depot(trip.arr_station, r)
            if depot is not None:
                event_times[depot.key].add(trip.arr_time)
                pull_ins += [(v, depot) for v in nodes]
        for (trip_id, r), nodes in departures.items():
            trip = inst.trip(trip_id)
            depot = inst.depot(trip.dep_station, r)
            if depot is not None:
                event_times[depot.key].add(trip.dep_time)
                pull_outs += [(v, depot) for v in nodes]

        timelines = {
            d.key: _Timeline(d, event_times.get(d.key, set()), inst.horizon_start, inst.end_time)
            for d in sorted(inst.depots, key=lambda d: d.key)
        }
        nodes: dict[Node, None] = {}
        for h in self.__arcs:
            for a, b in h.base_arcs:
                nodes.setdefault(a)
                nodes.setdefault(b)

        if self.__direct:
            self.__depot_arcs_direct(timelines, pull_ins, pull_outs, arrivals, departures)
            graph_timelines = {k: (tl.initial, tl.terminal) for k, tl in timelines.items()}
        else:
            self.__depot_arcs_timeline(timelines, pull_ins, pull_outs)
            graph_timelines = {k: tuple(tl.nodes) for k, tl in timelines.items()}

        balances: dict[Node, int] = {}
        for key, tl in timelines.items():
            for v in graph_timelines[key]:
                nodes.setdefault(v)
            balances[tl.initial] = tl.depot.start_inventory
            balances[tl.terminal] = balances.get(tl.terminal, 0) - tl.depot.target_end_inventory
        if not inst.strict_end_inventory:
            for v, b in self.__deviation_arcs(timelines).items():
                nodes.setdefault(v)
                balances[v] = b

        parking = tuple(h.id for h in self.__arcs if h.kind is ARC_KIND.PARKING)
        for h in self.__arcs:
            _assert_disjoint(h)
        logger.debug("built %s: %d nodes, %d hyperarcs", variant.value, len(nodes), len(self.__arcs))
        return Hypergraph(variant, inst, tuple(sorted(nodes, key=Node.sort_key)), tuple(self.__arcs), balances,
                          trip_index, connection_index, parking, graph_timelines)

    def __depot_arcs_timeline(self, timelines: dict, pull_ins: list, pull_outs: list) -> None:
        for v, depot in sorted(pull_ins, key=lambda e: (e[0].time, e[0].label)):
            target = timelines[depot.key].node_at(v.time)
            self.__arcs.append(Hyperarc(f"in.{v.trip}.{v.composition}.{v.position}", ARC_KIND.PULL_IN,
                                        ((v, target),), trip=v.trip, compositions=(v.composition,),
                                        depot=depot.key))
        for v, depot in sorted(pull_outs, key=lambda e: (e[0].time, e[0].label)):
            source = timelines[depot.key].node_at(v.time)
            self.__arcs.append(Hyperarc(f"out.{v.trip}.{v.composition}.{v.position}", ARC_KIND.PULL_OUT,
                                        ((source, v),), trip=v.trip, compositions=(v.composition,),
                                        depot=depot.key))
        for key, tl in timelines.items():
            for i, (a, b) in enumerate(zip(tl.nodes, tl.nodes[1:])):
                self.__arcs.append(Hyperarc(tl.park_id(i), ARC_KIND.PARKING, ((a, b),), upper_bound=None, depot=key))

    def __depot_arcs_direct(self, timelines: dict, pull_ins: list, pull_outs: list,
                            arrivals: dict, departures: dict) -> None:
        for v, depot in sorted(pull_ins, key=lambda e: (e[0].time, e[0].label)):
            tl = timelines[depot.key]
            in_id = f"in.{v.trip}.{v.composition}.{v.position}"
            self.__arcs.append(Hyperarc(in_id, ARC_KIND.PULL_IN, ((v, tl.terminal),), trip=v.trip,
                                        compositions=(v.composition,), depot=depot.key,
                                        path=(in_id, *tl.park_between(tl.node_at(v.time), tl.terminal))))
        for v, depot in sorted(pull_outs, key=lambda e: (e[0].time, e[0].label)):
            tl = timelines[depot.key]
            out_id = f"out.{v.trip}.{v.composition}.{v.position}"
            self.__arcs.append(Hyperarc(out_id, ARC_KIND.PULL_OUT, ((tl.initial, v),), trip=v.trip,
                                        compositions=(v.composition,), depot=depot.key,
                                        path=(*tl.park_between(tl.initial, tl.node_at(v.time)), out_id)))
        for spec in sorted(self.__specs, key=lambda s: (s.pred_trip, s.succ_trip, s.unit_type, s.station)):
            tl = timelines.get((spec.station, spec.unit_type))
            if tl is None:
                continue
            for a in arrivals.get((spec.pred_trip, spec.unit_type), ()):
                for b in departures.get((spec.succ_trip, spec.unit_type), ()):
                    in_id = f"in.{a.trip}.{a.composition}.{a.position}"
                    out_id = f"out.{b.trip}.{b.composition}.{b.position}"
                    self.__arcs.append(Hyperarc(
                        f"dir.{a.trip}.{a.composition}.{a.position}~{b.trip}.{b.composition}.{b.position}",
                        ARC_KIND.DIRECT, ((a, b),), connection=spec.connection,
                        compositions=(a.composition, b.composition), depot=tl.depot.key,
                        path=(in_id, *tl.park_between(tl.node_at(a.time), tl.node_at(b.time)), out_id),
                    ))
        for key, tl in timelines.items():
            self.__arcs.append(Hyperarc(f"park.{key[0]}.{key[1]}.all", ARC_KIND.PARKING,
                                        ((tl.initial, tl.terminal),), upper_bound=None, depot=key,
                                        path=tuple(tl.park_ids())))

    def __deviation_arcs(self, timelines: dict) -> dict[Node, int]:
        """Surplus and deficit arcs through one balancing node per unit type."""
        rate = self.__instance.cost_params.ending_deviation_per_unit
        slack_balance: dict[str, int] = defaultdict(int)
        for key, tl in timelines.items():
            r = key[1]
            slack = Node(NODE_KIND.SLACK, unit_type=r)
            slack_balance[r] += tl.depot.target_end_inventory - tl.depot.start_inventory
            self.__arcs.append(Hyperarc(f"dev+.{key[0]}.{r}", ARC_KIND.INVENTORY_DEVIATION, ((tl.terminal, slack),),
                                        rate, upper_bound=None, depot=key))
            self.__arcs.append(Hyperarc(f"dev-.{key[0]}.{r}", ARC_KIND.INVENTORY_DEVIATION, ((slack, tl.terminal),),
                                        rate, upper_bound=None, depot=key))
        return {Node(NODE_KIND.SLACK, unit_type=r): b for r, b in slack_balance.items()}


def _assert_disjoint(h: Hyperarc) -> None:
    tails = [a for a, _ in h.base_arcs]
    heads = [b for _, b in h.base_arcs]
    assert len(set(tails)) == len(tails) and len(set(heads)) == len(heads) and not set(tails) & set(heads), \
        f"hyperarc {h.id} has base arcs sharing a node"


class SmallCouplingRates:
    """
    Coupling costs of the small variants. A unit uncoupled at an arrival node
    is charged the cheapest share of one shunting action over all changes
    removing it; coupling at a departure node likewise.
    """
    def __init__(self, instance: Instance, changes: list[Change]) -> None:
        self.__instance = instance
        self.__rate = instance.cost_params.shunting_per_action
        self.__changes = changes

    def pull_in(self, trip: str, unit_type: str, position: int) -> Fraction:
        conn = self.__instance.successor_connection(trip)
        if conn is None:
            return Fraction(0)
        shares = [self.__rate / len(ch.uncoupled) for ch in self.__changes
                  if ch.connection == conn.id and ch.uncouple_trip == trip and (position, unit_type) in ch.uncoupled]
        return min(shares, default=self.__rate)

    def pull_out(self, trip: str, unit_type: str, position: int) -> Fraction:
        conn = self.__instance.predecessor_connection(trip)
        if conn is None:
            return Fraction(0)
        shares = [self.__rate / len(ch.coupled) for ch in self.__changes
                  if ch.connection == conn.id and ch.couple_trip == trip and (position, unit_type) in ch.coupled]
        return min(shares, default=self.__rate)


def _project_small(full: Hypergraph, variant: VARIANT, changes: list[Change]) -> Hypergraph:
    inst = full.instance
    rate = inst.cost_params.shunting_per_action
    small_costs = SmallCouplingRates(inst, changes)
    by_id = {ch.id: ch for ch in changes}

    groups: dict[tuple, list[Hyperarc]] = {}
    for h in full.hyperarcs:
        base = tuple((a.project(), b.project()) for a, b in h.base_arcs)
        if h.kind is ARC_KIND.CONNECTION_CHANGE:
            key = (h.kind, h.connection, frozenset(base))
        elif h.kind in (ARC_KIND.PULL_IN, ARC_KIND.PULL_OUT, ARC_KIND.DIRECT):
            key = (h.kind, frozenset(base))
        else:
            key = (h.kind, h.id)
        groups.setdefault(key, []).append(h)

    arcs: list[Hyperarc] = []
    change_counter: dict[str, int] = defaultdict(int)
    connection_index: dict[str, list[str]] = {c: [] for c in full.connection_index}
    for key, copies in groups.items():
        first = copies[0]
        base = tuple((a.project(), b.project()) for a, b in first.base_arcs)
        copy_ids = tuple(g.id for g in copies)
        if first.kind is ARC_KIND.CONNECTION_CHANGE:
            change_counter[first.connection] += 1
            arc_id = f"chg.{first.connection}.k{change_counter[first.connection]}"
            cost = min((by_id[g.id].actions - by_id[g.id].depot_actions) * rate for g in copies)
            arcs.append(Hyperarc(arc_id, first.kind, base, cost, connection=first.connection, copies=copy_ids))
            connection_index[first.connection].append(arc_id)
        elif first.kind is ARC_KIND.PULL_IN:
            v = base[0][0]
            arc_id = f"in.{v.trip}.{v.unit_type}.{v.position}"
            path = (arc_id, *first.path[1:]) if first.path else ()
            arcs.append(Hyperarc(arc_id, first.kind, base, small_costs.pull_in(v.trip, v.unit_type, v.position),
                                 trip=v.trip, depot=first.depot, copies=copy_ids, path=path))
        elif first.kind is ARC_KIND.PULL_OUT:
            v = base[0][1]
            arc_id = f"out.{v.trip}.{v.unit_type}.{v.position}"
            path = (*first.path[:-1], arc_id) if first.path else ()
            arcs.append(Hyperarc(arc_id, first.kind, base, small_costs.pull_out(v.trip, v.unit_type, v.position),
                                 trip=v.trip, depot=first.depot, copies=copy_ids, path=path))
        elif first.kind is ARC_KIND.DIRECT:
            a, b = base[0]
            in_id = f"in.{a.trip}.{a.unit_type}.{a.position}"
            out_id = f"out.{b.trip}.{b.unit_type}.{b.position}"
            cost = small_costs.pull_in(a.trip, a.unit_type, a.position) + \
                small_costs.pull_out(b.trip, b.unit_type, b.position)
            arcs.append(Hyperarc(f"dir.{a.trip}.{a.position}~{b.trip}.{b.position}.{a.unit_type}", first.kind,
                                 base, cost, connection=first.connection, depot=first.depot, copies=copy_ids,
                                 path=(in_id, *first.path[1:-1], out_id)))
        else:
            arcs.append(replace(first, base_arcs=base, copies=copy_ids))

    nodes: dict[Node, None] = {}
    for h in arcs:
        for a, b in h.base_arcs:
            nodes.setdefault(a)
            nodes.setdefault(b)
    for tl in full.timelines.values():
        for v in tl:
            nodes.setdefault(v)
    for v in full.balances:
        nodes.setdefault(v)
    return Hypergraph(variant, inst, tuple(sorted(nodes, key=Node.sort_key)), tuple(arcs), dict(full.balances),
                      dict(full.trip_index), {c: tuple(ids) for c, ids in connection_index.items()},
                      full.parking, dict(full.timelines))


_FULL_OF = {
    VARIANT.hD: VARIANT.HD,
    VARIANT.hA: VARIANT.HA,
    VARIANT.hA_CLOSURE: VARIANT.HA_CLOSURE,
}


def build(instance: Instance, variant: VARIANT,
          direct: frozenset[DirectArcSpec] | CLOSURE_MODE | None = None) -> Hypergraph:
    """
    Build one hypergraph variant. `direct` picks the direct connection arcs of
    the A variants: a set of specs, or a closure mode (declared arcs for hA/HA,
    the closure for hĀ/HĀ when omitted).
    """
    if variant is VARIANT.C:
        raise VariantMismatch("the composition graph is obtained with composition.contract")
    if direct is None:
        direct = CLOSURE_MODE.CLOSURE if variant.closure else CLOSURE_MODE.DECLARED
    specs = closure_arcs(instance, direct) if isinstance(direct, CLOSURE_MODE) else frozenset(direct)
    if not variant.direct:
        specs = frozenset()

    builder = _FullBuilder(instance, variant.direct, specs)
    full_variant = _FULL_OF.get(variant, variant)
    full = builder.build(full_variant)
    if variant.full:
        return full
    small = _project_small(full, variant, usable_changes(instance))
    logger.debug("projected %s: %d nodes, %d hyperarcs", variant.value, len(small.nodes), len(small.hyperarcs))
    return small


def usable_changes(instance: Instance) -> list[Change]:
    """Composition changes that survive the depot and composition filters of `build`."""
    builder = _FullBuilder(instance, False, frozenset())
    return [ch for found in builder.usable_changes(builder.usable_trip_arcs()).values() for ch in found]
