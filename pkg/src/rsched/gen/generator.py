from __future__ import annotations
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import product
import logging

import numpy as np

from rsched.data.instance import (Composition, Connection, Depot, Instance, Trip, UnitType, closure_arcs)
from rsched.data.rs_types import CLOSURE_MODE, CONNECTION_KIND
from rsched.errors import ConfigError

logger = logging.getLogger(__name__)

UNIT_TYPES = (UnitType("r", length_units=3, seats=200), UnitType("b", length_units=4, seats=300))
PEAKS = ((420, 600), (960, 1140))
FIRST_DEPARTURE = 300
HEADWAY = 100
RUNNING_TIME = 60


@dataclass(frozen=True)
class GenConfig:
    seed: int = 1
    lines: int = 2
    trips_per_line: int = 4
    unit_types: int = 2
    n_max: int = 2
    peak_demand: int = 450
    offpeak_demand: int = 150
    split_fraction: float = 0.0
    station_count: int = 3
    composition_drop: float = 0.0
    declare_closure: bool = False

    def check(self) -> None:
        problems = []
        if self.lines < 1 or self.trips_per_line < 1:
            problems.append("lines and trips_per_line must be positive")
        if self.unit_types not in (1, 2):
            problems.append("unit_types must be 1 or 2")
        if not 1 <= self.n_max <= 4:
            problems.append("n_max must lie in 1..4")
        if self.station_count < 2:
            problems.append("station_count must be at least 2")
        if not 0 <= self.split_fraction <= 1:
            problems.append("split_fraction must lie in [0, 1]")
        if not 0 <= self.composition_drop < 1:
            problems.append("composition_drop must lie in [0, 1)")
        if self.peak_demand < 0 or self.offpeak_demand < 0:
            problems.append("demands must be nonnegative")
        if problems:
            raise ConfigError("; ".join(problems))


def _demand(rng: np.random.Generator, cfg: GenConfig, dep_time: int) -> int:
    base = cfg.peak_demand if any(a <= dep_time < b for a, b in PEAKS) else cfg.offpeak_demand
    return max(0, base + int(rng.integers(-50, 51)))


class _LineBuilder:
    """Trips of one line shuttling between two stations, chained by connections."""
    def __init__(self, cfg: GenConfig, rng: np.random.Generator, compositions: list[str],
                 units: dict[str, tuple[str, ...]], stations: list[str]) -> None:
        self.__cfg = cfg
        self.__rng = rng
        self.__compositions = compositions
        self.__units = units
        self.__stations = stations
        self.trips: list[Trip] = []
        self.connections: list[Connection] = []
        self.origins: Counter[str] = Counter()

    def __allowed(self, first_type: str) -> tuple[str, ...]:
        """All compositions led by `first_type` stay, so every change keeps a unit; others may be dropped."""
        keep = []
        for p in self.__compositions:
            if self.__units[p][0] == first_type or self.__rng.random() >= self.__cfg.composition_drop:
                keep.append(p)
        return tuple(keep)

    def __singles(self) -> tuple[str, ...]:
        return tuple(p for p in self.__compositions if len(self.__units[p]) == 1)

    def build(self, line: int) -> None:
        cfg, rng = self.__cfg, self.__rng
        a, b = (str(s) for s in rng.choice(self.__stations, size=2, replace=False))
        distance = Fraction(int(rng.integers(20, 81)))
        first_type = self.__units[self.__compositions[0]][0]
        self.origins[a] += 1
        line_trips = []
        for i in range(cfg.trips_per_line):
            dep = FIRST_DEPARTURE + 15 * line + HEADWAY * i
            origin, destination = (a, b) if i % 2 == 0 else (b, a)
            line_trips.append(Trip(f"L{line}t{i}", origin, destination, dep, dep + RUNNING_TIME, distance,
                                   _demand(rng, cfg, dep), self.__allowed(first_type)))
        self.trips += line_trips

        for i, (pred, succ) in enumerate(zip(line_trips, line_trips[1:])):
            c_id = f"L{line}c{i}"
            if cfg.n_max >= 2 and rng.random() < cfg.split_fraction:
                self.__split_or_join(c_id, pred, succ, bool(rng.integers(2)))
            else:
                self.connections.append(Connection(c_id, CONNECTION_KIND.ONE_TO_ONE, (pred.id,), (succ.id,)))

    def __split_or_join(self, c_id: str, pred: Trip, succ: Trip, split: bool) -> None:
        other = str(self.__rng.choice([s for s in self.__stations if s != pred.arr_station]))
        singles = self.__singles()
        if split:
            extra = Trip(f"{c_id}x", pred.arr_station, other, succ.dep_time, succ.dep_time + RUNNING_TIME,
                         pred.distance_km, self.__cfg.offpeak_demand, singles)
            self.trips.append(extra)
            self.connections.append(Connection(c_id, CONNECTION_KIND.ONE_TO_TWO, (pred.id,), (succ.id, extra.id)))
        else:
            extra = Trip(f"{c_id}x", other, pred.arr_station, pred.arr_time - RUNNING_TIME, pred.arr_time,
                         pred.distance_km, self.__cfg.offpeak_demand, singles)
            self.trips.append(extra)
            self.origins[other] += 1
            self.connections.append(Connection(c_id, CONNECTION_KIND.TWO_TO_ONE, (pred.id, extra.id), (succ.id,)))


def generate(cfg: GenConfig) -> Instance:
    """Seeded synthetic timetable: shuttle lines with a peak demand profile and depots at every station."""
    cfg.check()
    rng = np.random.default_rng(cfg.seed)
    types = UNIT_TYPES[:cfg.unit_types]
    units = {
        "".join(seq): seq
        for size in range(1, cfg.n_max + 1)
        for seq in product([u.id for u in types], repeat=size)
    }
    compositions = list(units)
    stations = [f"S{i}" for i in range(cfg.station_count)]

    lines = _LineBuilder(cfg, rng, compositions, units, stations)
    for line in range(cfg.lines):
        lines.build(line)

    starts = {s: cfg.n_max * lines.origins[s] for s in stations}
    depots = tuple(Depot(s, u.id, starts[s], starts[s]) for s in stations for u in types)
    instance = Instance(
        unit_types=types,
        compositions=tuple(Composition(p, seq) for p, seq in units.items()),
        trips=tuple(lines.trips),
        connections=tuple(lines.connections),
        depots=depots,
        n_max=cfg.n_max,
        name=f"gen-s{cfg.seed}",
    )
    if cfg.declare_closure:
        instance = replace(instance, direct_arcs=tuple(sorted(
            closure_arcs(instance, CLOSURE_MODE.CLOSURE),
            key=lambda a: (a.pred_trip, a.succ_trip, a.unit_type, a.station))))
    logger.info("generated %s: %d trips, %d connections", instance.name, len(instance.trips),
                len(instance.connections))
    return instance
