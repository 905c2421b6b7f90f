from __future__ import annotations
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
import logging

from rsched.data.rs_types import CONNECTION_KIND, CLOSURE_MODE, SIDE
from rsched.errors import NotFound, UnknownDepot

logger = logging.getLogger(__name__)

DEFAULT_N_MAX = 5


@dataclass(frozen=True)
class UnitType:
    id: str
    length_units: int
    seats: int
    capacity: int | None = None


@dataclass(frozen=True)
class Composition:
    id: str
    units: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.units)


@dataclass(frozen=True)
class Trip:
    id: str
    dep_station: str
    arr_station: str
    dep_time: int
    arr_time: int
    distance_km: Fraction
    demand_seats: int
    allowed_compositions: tuple[str, ...]


@dataclass(frozen=True)
class Connection:
    id: str
    kind: CONNECTION_KIND
    predecessors: tuple[str, ...]
    successors: tuple[str, ...]
    # optional whitelist of (predecessor composition, successor composition) pairs, 1-to-1 only
    allowed_changes: tuple[tuple[str, str], ...] | None = None


@dataclass(frozen=True)
class Depot:
    station: str
    unit_type: str
    start_inventory: int
    target_end_inventory: int

    @property
    def key(self) -> tuple[str, str]:
        return (self.station, self.unit_type)


@dataclass(frozen=True)
class CostParams:
    mileage_per_carriage_km: Fraction = Fraction(1, 10)
    seat_shortage_per_seat: Fraction = Fraction(1, 5)
    shunting_per_action: Fraction = Fraction(10)
    ending_deviation_per_unit: Fraction = Fraction(10000)


@dataclass(frozen=True, order=True)
class DirectArcSpec:
    """
    A depot shortcut: a unit of `unit_type` pulled in after `pred_trip` arrives
    at `station` and pulled out again for `succ_trip`. It stands for the path
    pull-in arc, parking arcs from `pull_in_time` to `pull_out_time`, pull-out arc.
    """
    pred_trip: str
    succ_trip: str
    unit_type: str
    station: str
    pull_in_time: int
    pull_out_time: int
    connection: str | None = None


@dataclass(frozen=True)
class Violation:
    kind: str
    entity: str
    message: str = ""

    def __str__(self) -> str:
        return f"{self.kind}({self.entity})"


@dataclass(frozen=True)
class Instance:
    unit_types: tuple[UnitType, ...] = ()
    compositions: tuple[Composition, ...] = ()
    trips: tuple[Trip, ...] = ()
    connections: tuple[Connection, ...] = ()
    depots: tuple[Depot, ...] = ()
    cost_params: CostParams = field(default_factory=CostParams)
    n_max: int = DEFAULT_N_MAX
    direct_arcs: tuple[DirectArcSpec, ...] = ()
    uncouple_side: SIDE = SIDE.REAR
    couple_side: SIDE = SIDE.REAR
    allow_replacement: bool = True
    strict_end_inventory: bool = False
    horizon_start: int = 0
    horizon_end: int | None = None
    name: str = ""

    @cached_property
    def _unit_types(self) -> dict[str, UnitType]:
        return {u.id: u for u in self.unit_types}

    @cached_property
    def _compositions(self) -> dict[str, Composition]:
        return {p.id: p for p in self.compositions}

    @cached_property
    def _trips(self) -> dict[str, Trip]:
        return {t.id: t for t in self.trips}

    @cached_property
    def _connections(self) -> dict[str, Connection]:
        return {c.id: c for c in self.connections}

    @cached_property
    def _depots(self) -> dict[tuple[str, str], Depot]:
        return {d.key: d for d in self.depots}

    @cached_property
    def _out_connection(self) -> dict[str, Connection]:
        return {t: c for c in self.connections for t in c.predecessors}

    @cached_property
    def _in_connection(self) -> dict[str, Connection]:
        return {t: c for c in self.connections for t in c.successors}

    def unit_type(self, unit_type_id: str) -> UnitType:
        try:
            return self._unit_types[unit_type_id]
        except KeyError:
            raise NotFound(f"unit type {unit_type_id!r}") from None

    def composition(self, composition_id: str) -> Composition:
        try:
            return self._compositions[composition_id]
        except KeyError:
            raise NotFound(f"composition {composition_id!r}") from None

    def trip(self, trip_id: str) -> Trip:
        try:
            return self._trips[trip_id]
        except KeyError:
            raise NotFound(f"trip {trip_id!r}") from None

    def connection(self, connection_id: str) -> Connection:
        try:
            return self._connections[connection_id]
        except KeyError:
            raise NotFound(f"connection {connection_id!r}") from None

    def depot(self, station: str, unit_type: str) -> Depot | None:
        return self._depots.get((station, unit_type))

    def require_depot(self, station: str, unit_type: str) -> Depot:
        depot = self.depot(station, unit_type)
        if depot is None:
            raise UnknownDepot(station, unit_type)
        return depot

    def successor_connection(self, trip_id: str) -> Connection | None:
        return self._out_connection.get(trip_id)

    def predecessor_connection(self, trip_id: str) -> Connection | None:
        return self._in_connection.get(trip_id)

    def trip_types(self, trip_id: str) -> set[str]:
        """Unit types occurring in any composition the trip may run with."""
        return {r for p in self.trip(trip_id).allowed_compositions for r in self.composition(p).units}

    def carriages(self, composition_id: str) -> int:
        return sum(self.unit_type(r).length_units for r in self.composition(composition_id).units)

    def seats(self, composition_id: str) -> int:
        return sum(self.unit_type(r).seats for r in self.composition(composition_id).units)

    def seat_shortage(self, trip_id: str, composition_id: str) -> int:
        return max(0, self.trip(trip_id).demand_seats - self.seats(composition_id))

    def trip_cost(self, trip_id: str, composition_id: str) -> Fraction:
        """Mileage plus seat shortage cost of running a trip with a composition."""
        trip = self.trip(trip_id)
        costs = self.cost_params
        mileage = costs.mileage_per_carriage_km * self.carriages(composition_id) * trip.distance_km
        return mileage + costs.seat_shortage_per_seat * self.seat_shortage(trip_id, composition_id)

    @property
    def stations(self) -> list[str]:
        found = {s for t in self.trips for s in (t.dep_station, t.arr_station)}
        found.update(d.station for d in self.depots)
        return sorted(found)

    @property
    def end_time(self) -> int:
        if self.horizon_end is not None:
            return self.horizon_end
        return max((t.arr_time for t in self.trips), default=self.horizon_start)

    def trips_by_time(self) -> list[Trip]:
        return sorted(self.trips, key=lambda t: (t.dep_time, t.id))


def _check_ids(kind: str, ids: list[str]) -> list[Violation]:
    return [
        Violation("DuplicateId", i, f"{kind} id {i!r} used {n} times")
        for i, n in sorted(Counter(ids).items()) if n > 1
    ]


def _check_connection(instance: Instance, c: Connection, trips: dict[str, Trip]) -> list[Violation]:
    found: list[Violation] = []
    cardinality = {
        CONNECTION_KIND.ONE_TO_ONE: (1, 1),
        CONNECTION_KIND.ONE_TO_TWO: (1, 2),
        CONNECTION_KIND.TWO_TO_ONE: (2, 1),
    }[c.kind]
    if (len(c.predecessors), len(c.successors)) != cardinality:
        found.append(Violation("CardinalityViolation", c.id,
                               f"{c.kind.value} needs {cardinality[0]} predecessor(s) and {cardinality[1]} successor(s)"))
    missing = [t for t in (*c.predecessors, *c.successors) if t not in trips]
    if missing:
        found.append(Violation("UnknownReference", c.id, f"unknown trips {missing}"))
        return found

    for p in c.predecessors:
        for s in c.successors:
            pred, succ = trips[p], trips[s]
            if pred.arr_station != succ.dep_station:
                found.append(Violation("StationMismatch", c.id,
                                       f"{p} arrives at {pred.arr_station}, {s} departs from {succ.dep_station}"))
            if pred.arr_time > succ.dep_time:
                found.append(Violation("TimeOrderViolation", c.id,
                                       f"{p} arrives at {pred.arr_time} after {s} departs at {succ.dep_time}"))

    if c.allowed_changes is not None:
        if c.kind is not CONNECTION_KIND.ONE_TO_ONE:
            found.append(Violation("AllowedChangeViolation", c.id, "allowed_changes only apply to 1-to-1 connections"))
        else:
            pred, succ = trips[c.predecessors[0]], trips[c.successors[0]]
            for p, q in c.allowed_changes:
                if p not in pred.allowed_compositions or q not in succ.allowed_compositions:
                    found.append(Violation("AllowedChangeViolation", c.id, f"change {p}->{q} not offered by its trips"))
    return found


def validate(instance: Instance) -> list[Violation]:
    """
    Check every type invariant and the NS-setting axioms. Violations are
    returned in a deterministic order, nothing is raised.
    """
    found: list[Violation] = []
    found += _check_ids("unit type", [u.id for u in instance.unit_types])
    found += _check_ids("composition", [p.id for p in instance.compositions])
    found += _check_ids("trip", [t.id for t in instance.trips])
    found += _check_ids("connection", [c.id for c in instance.connections])

    unit_types = {u.id: u for u in instance.unit_types}
    compositions = {p.id: p for p in instance.compositions}
    trips = {t.id: t for t in instance.trips}

    if instance.n_max < 1:
        found.append(Violation("CompositionSize", "n_max", "n_max must be at least 1"))
    for u in instance.unit_types:
        if u.length_units < 1 or u.seats < 0:
            found.append(Violation("NegativeValue", u.id, "unit types need a positive length and nonnegative seats"))
    for p in instance.compositions:
        if not 1 <= len(p.units) <= instance.n_max:
            found.append(Violation("CompositionSize", p.id, f"{len(p.units)} units, allowed 1..{instance.n_max}"))
        unknown = [r for r in p.units if r not in unit_types]
        if unknown:
            found.append(Violation("UnknownReference", p.id, f"unknown unit types {unknown}"))

    for t in instance.trips:
        if t.dep_time >= t.arr_time:
            found.append(Violation("TripTimeViolation", t.id, "departure must precede arrival"))
        if t.distance_km < 0 or t.demand_seats < 0:
            found.append(Violation("NegativeValue", t.id, "distance and demand must be nonnegative"))
        if not t.allowed_compositions:
            found.append(Violation("EmptyAllowedSet", t.id, "no allowed composition"))
        unknown = [p for p in t.allowed_compositions if p not in compositions]
        if unknown:
            found.append(Violation("UnknownReference", t.id, f"unknown compositions {unknown}"))

    as_pred: Counter[str] = Counter()
    as_succ: Counter[str] = Counter()
    for c in instance.connections:
        found += _check_connection(instance, c, trips)
        as_pred.update(c.predecessors)
        as_succ.update(c.successors)
    for t, n in sorted(as_pred.items()):
        if n > 1:
            found.append(Violation("SplitOfJoinViolation", t, f"predecessor in {n} connections"))
    for t, n in sorted(as_succ.items()):
        if n > 1:
            found.append(Violation("JoinOfSplitViolation", t, f"successor in {n} connections"))

    seen_depots: Counter[tuple[str, str]] = Counter(d.key for d in instance.depots)
    for (station, r), n in sorted(seen_depots.items()):
        if n > 1:
            found.append(Violation("DuplicateDepot", f"{station}/{r}", f"{n} depots"))
    for d in instance.depots:
        if d.unit_type not in unit_types:
            found.append(Violation("UnknownReference", f"{d.station}/{d.unit_type}", "unknown unit type"))
        if d.start_inventory < 0 or d.target_end_inventory < 0:
            found.append(Violation("NegativeValue", f"{d.station}/{d.unit_type}", "inventories must be nonnegative"))

    costs = instance.cost_params
    for name in ("mileage_per_carriage_km", "seat_shortage_per_seat", "shunting_per_action", "ending_deviation_per_unit"):
        if getattr(costs, name) < 0:
            found.append(Violation("NegativeValue", name, "cost parameters must be nonnegative"))

    for a in instance.direct_arcs:
        label = f"{a.pred_trip}>{a.succ_trip}/{a.unit_type}"
        if a.pred_trip not in trips or a.succ_trip not in trips:
            found.append(Violation("UnknownReference", label, "direct arc names an unknown trip"))
            continue
        if instance.depot(a.station, a.unit_type) is None:
            found.append(Violation("UnknownDepot", label, f"no depot at {a.station} for {a.unit_type}"))
        pred, succ = trips[a.pred_trip], trips[a.succ_trip]
        if not _feasible_pair(pred, succ) or a.station != pred.arr_station:
            found.append(Violation("DirectArcViolation", label, "direct arc is not time and station feasible"))
        elif a.pull_in_time != pred.arr_time or a.pull_out_time != succ.dep_time:
            found.append(Violation("DirectArcViolation", label,
                                   f"pull-in/pull-out at {a.pull_in_time}/{a.pull_out_time}, "
                                   f"trips give {pred.arr_time}/{succ.dep_time}"))
        elif a.connection != connection_between(instance, pred.id, succ.id):
            found.append(Violation("DirectArcViolation", label, f"connection {a.connection!r} does not link the trips"))
    return found


def _feasible_pair(pred: Trip, succ: Trip) -> bool:
    return pred.id != succ.id and pred.arr_station == succ.dep_station and pred.arr_time <= succ.dep_time


def connection_between(instance: Instance, pred: str, succ: str) -> str | None:
    c = instance.successor_connection(pred)
    return c.id if c is not None and succ in c.successors else None


def closure_arcs(instance: Instance, mode: CLOSURE_MODE = CLOSURE_MODE.CLOSURE) -> frozenset[DirectArcSpec]:
    """
    Direct connection arcs. `declared` returns the instance's own arcs,
    `closure` every pull-in/parking/pull-out shortcut inside one depot timeline.
    """
    if mode is CLOSURE_MODE.DECLARED:
        for a in instance.direct_arcs:
            instance.require_depot(a.station, a.unit_type)
        return frozenset(instance.direct_arcs)

    arcs: set[DirectArcSpec] = set()
    for pred in instance.trips:
        pred_types = instance.trip_types(pred.id)
        for succ in instance.trips:
            if not _feasible_pair(pred, succ):
                continue
            for r in sorted(pred_types & instance.trip_types(succ.id)):
                if instance.depot(pred.arr_station, r) is None:
                    continue
                arcs.add(DirectArcSpec(pred.id, succ.id, r, pred.arr_station, pred.arr_time, succ.dep_time,
                                       connection_between(instance, pred.id, succ.id)))
    logger.debug("closure of %s holds %d direct arcs", instance.name or "instance", len(arcs))
    return frozenset(arcs)
