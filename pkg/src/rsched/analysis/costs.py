from __future__ import annotations
from collections import defaultdict
from dataclasses import dataclass, field
import logging

from rsched.analysis.variants import Graph, VariantSolve, all_arcs, arc_role
from rsched.data.instance import Instance
from rsched.data.rs_types import ARC_KIND
from rsched.errors import InfeasibleSolution
from rsched.model.changes import Change, enumerate_changes
from rsched.model.composition import CompositionGraph
from rsched.model.hypergraph import Hyperarc, SmallCouplingRates, usable_changes

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CostBreakdown:
    composition_cost: object
    coupling_cost: object
    deviation_cost: object

    @property
    def total(self):
        return self.composition_cost + self.coupling_cost + self.deviation_cost

    def as_dict(self) -> dict[str, float]:
        return {"composition": float(self.composition_cost), "coupling": float(self.coupling_cost),
                "deviation": float(self.deviation_cost), "total": float(self.total)}


@dataclass
class Rotation:
    """
    What a solution operates, independent of the model it came from: weights
    of the compositions per trip, weights of the composition changes (models
    that resolve compositions) and the units moved through depots at
    connections (small models).
    """
    compositions: dict[str, dict[str, object]] = field(default_factory=dict)
    changes: dict[str, object] = field(default_factory=dict)
    unit_moves: list[tuple[Hyperarc, object]] = field(default_factory=list)


def _resolves_compositions(g: Graph) -> bool:
    return isinstance(g, CompositionGraph) or g.variant.full


def rotation_of(g: Graph, values: dict, tol: float = 1e-6) -> Rotation:
    rotation = Rotation()
    resolved = _resolves_compositions(g)
    per_connection: dict[str, object] = defaultdict(int)
    for h in all_arcs(g):
        x = values.get(h.id, 0)
        if not x:
            continue
        role = arc_role(g, h)
        if role == "trip":
            weights = rotation.compositions.setdefault(h.trip, {})
            weights[h.compositions[0]] = weights.get(h.compositions[0], 0) + x
        elif role == "change" and resolved:
            rotation.changes[h.id] = x
            per_connection[h.connection] += x
        elif role == "change" or (role == "depot" and h.kind is not ARC_KIND.PARKING):
            rotation.unit_moves.append((h, x))

    for t in g.trip_index:
        served = sum(rotation.compositions.get(t, {}).values(), 0)
        if abs(served - 1) > tol:
            raise InfeasibleSolution(f"trip {t} is covered {served} times")
    if resolved:
        for c in g.connection_index:
            if abs(per_connection[c] - 1) > tol:
                raise InfeasibleSolution(f"connection {c} is served by {per_connection[c]} changes")
    return rotation


class _Replay:
    """Depot inventories over time, from the units a rotation moves in and out."""
    def __init__(self, instance: Instance) -> None:
        self.__instance = instance
        self.__events: dict[tuple[str, str], list[tuple[int, object]]] = defaultdict(list)

    def move(self, station: str, unit_type: str, time: int, delta) -> None:
        if delta:
            self.__events[(station, unit_type)].append((time, delta))

    def line_ends(self, rotation: Rotation) -> None:
        inst = self.__instance
        for t, weights in rotation.compositions.items():
            trip = inst.trip(t)
            for p, w in weights.items():
                for r in inst.composition(p).units:
                    if inst.predecessor_connection(t) is None:
                        self.move(trip.dep_station, r, trip.dep_time, -w)
                    if inst.successor_connection(t) is None:
                        self.move(trip.arr_station, r, trip.arr_time, w)

    def change(self, ch: Change, w) -> None:
        inst = self.__instance
        if ch.uncouple_trip is not None:
            trip = inst.trip(ch.uncouple_trip)
            for _, r in ch.uncoupled:
                self.move(trip.arr_station, r, trip.arr_time, w)
        if ch.couple_trip is not None:
            trip = inst.trip(ch.couple_trip)
            for _, r in ch.coupled:
                self.move(trip.dep_station, r, trip.dep_time, -w)

    def end_inventories(self, tol: float) -> dict[tuple[str, str], object]:
        inst = self.__instance
        ends = {}
        for depot in inst.depots:
            level = depot.start_inventory
            # arrivals first: a unit pulled in can leave again at the same time
            for time, delta in sorted(self.__events.get(depot.key, ()), key=lambda e: (e[0], e[1] < 0)):
                level += delta
                if level < -tol:
                    raise InfeasibleSolution(f"depot {depot.station}/{depot.unit_type} runs short at {time}")
            ends[depot.key] = level
        for key in self.__events:
            if inst.depot(*key) is None:
                raise InfeasibleSolution(f"units move through {key[0]}/{key[1]}, which has no depot")
        return ends


def cost_breakdown(instance: Instance, solution: VariantSolve, tol: float = 1e-6) -> CostBreakdown:
    """
    Recompute the cost of a solved variant from the rotation it operates:
    mileage and seat shortage of the chosen compositions, shunting actions of
    the composition changes and the deviation of the replayed end inventories
    from their targets. Small variants charge each unit moved through a depot
    at a connection its share of a shunting action.
    """
    g = solution.graph
    rotation = rotation_of(g, solution.solution.values, tol)
    costs = instance.cost_params
    rate = costs.shunting_per_action

    composition = 0
    for t, weights in rotation.compositions.items():
        trip = instance.trip(t)
        for p, w in weights.items():
            mileage = costs.mileage_per_carriage_km * instance.carriages(p) * trip.distance_km
            shortage = costs.seat_shortage_per_seat * max(0, trip.demand_seats - instance.seats(p))
            composition += w * (mileage + shortage)

    replay = _Replay(instance)
    coupling = 0
    if _resolves_compositions(g):
        known = {ch.id: ch for c in instance.connections for ch in enumerate_changes(instance, c)}
        replay.line_ends(rotation)
        for change_id, w in rotation.changes.items():
            coupling += w * known[change_id].actions * rate
            replay.change(known[change_id], w)
    else:
        changes = usable_changes(instance)
        by_id = {ch.id: ch for ch in changes}
        shares = SmallCouplingRates(instance, changes)
        for h, x in rotation.unit_moves:
            if h.kind is ARC_KIND.CONNECTION_CHANGE:
                coupling += x * min((by_id[c].actions - by_id[c].depot_actions) * rate for c in h.copies)
                continue
            tail, head = h.base_arcs[0]
            if h.kind in (ARC_KIND.PULL_IN, ARC_KIND.DIRECT):
                coupling += x * shares.pull_in(tail.trip, tail.unit_type, tail.position)
                replay.move(h.depot[0], h.depot[1], tail.time, x)
            if h.kind in (ARC_KIND.PULL_OUT, ARC_KIND.DIRECT):
                coupling += x * shares.pull_out(head.trip, head.unit_type, head.position)
                replay.move(h.depot[0], h.depot[1], head.time, -x)

    deviation = 0
    for key, end in replay.end_inventories(tol).items():
        target = instance.require_depot(*key).target_end_inventory
        if instance.strict_end_inventory:
            if abs(end - target) > tol:
                raise InfeasibleSolution(f"depot {key[0]}/{key[1]} ends with {end} units instead of {target}")
            continue
        deviation += abs(end - target) * costs.ending_deviation_per_unit
    breakdown = CostBreakdown(composition, coupling, deviation)
    logger.debug("%s breakdown %s", solution.variant.value, breakdown.as_dict())
    return breakdown
