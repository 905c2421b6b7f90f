from __future__ import annotations
from dataclasses import replace
from fractions import Fraction
import json
import logging
from pathlib import Path

from rsched.data.instance import (DEFAULT_N_MAX, Composition, Connection, CostParams, Depot, DirectArcSpec, Instance,
                                  Trip, UnitType, connection_between)
from rsched.data.rs_types import CONNECTION_KIND, SIDE
from rsched.errors import InstanceFormatError

logger = logging.getLogger(__name__)

REQUIRED = ("unit_types", "compositions", "trips", "connections", "depots")


def to_fraction(value) -> Fraction:
    """Numbers are read through their decimal text, so 0.1 becomes 1/10."""
    if isinstance(value, bool):
        raise InstanceFormatError(f"expected a number, got {value!r}")
    if isinstance(value, (int, float, str)):
        try:
            return Fraction(str(value))
        except ValueError:
            pass
    raise InstanceFormatError(f"expected a number, got {value!r}")


class InstanceFactory:
    @staticmethod
    def unit_type(d: dict) -> UnitType:
        return UnitType(str(d["id"]), int(d["length_units"]), int(d["seats"]), d.get("capacity"))

    @staticmethod
    def composition(d: dict) -> Composition:
        return Composition(str(d["id"]), tuple(str(u) for u in d["units"]))

    @staticmethod
    def trip(d: dict) -> Trip:
        return Trip(str(d["id"]), str(d["dep_station"]), str(d["arr_station"]), int(d["dep_time"]),
                    int(d["arr_time"]), to_fraction(d["distance_km"]), int(d["demand_seats"]),
                    tuple(str(p) for p in d["allowed_compositions"]))

    @staticmethod
    def connection(d: dict) -> Connection:
        try:
            kind = CONNECTION_KIND(d["kind"])
        except ValueError:
            raise InstanceFormatError(f"connection {d.get('id')!r} has unknown kind {d['kind']!r}") from None
        allowed = d.get("allowed_changes")
        return Connection(str(d["id"]), kind, tuple(d["predecessors"]), tuple(d["successors"]),
                          None if allowed is None else tuple((str(p), str(q)) for p, q in allowed))

    @staticmethod
    def depot(d: dict) -> Depot:
        return Depot(str(d["station"]), str(d["unit_type"]), int(d["start_inventory"]),
                     int(d["target_end_inventory"]))

    @staticmethod
    def costs(d: dict) -> CostParams:
        defaults = CostParams()
        return CostParams(**{
            name: to_fraction(d[name]) if name in d else getattr(defaults, name)
            for name in ("mileage_per_carriage_km", "seat_shortage_per_seat", "shunting_per_action",
                         "ending_deviation_per_unit")
        })

    @staticmethod
    def direct_arc(d: dict) -> DirectArcSpec:
        return DirectArcSpec(str(d["pred_trip"]), str(d["succ_trip"]), str(d["unit_type"]), str(d["station"]),
                             int(d["pull_in_time"]), int(d["pull_out_time"]))

    @staticmethod
    def from_dict(doc: dict, name: str = "") -> Instance:
        if not isinstance(doc, dict):
            raise InstanceFormatError("an instance document is a JSON object")
        missing = [k for k in REQUIRED if k not in doc]
        if missing:
            raise InstanceFormatError(f"missing top-level keys: {', '.join(missing)}")
        try:
            instance = Instance(
                unit_types=tuple(InstanceFactory.unit_type(d) for d in doc["unit_types"]),
                compositions=tuple(InstanceFactory.composition(d) for d in doc["compositions"]),
                trips=tuple(InstanceFactory.trip(d) for d in doc["trips"]),
                connections=tuple(InstanceFactory.connection(d) for d in doc["connections"]),
                depots=tuple(InstanceFactory.depot(d) for d in doc["depots"]),
                cost_params=InstanceFactory.costs(doc.get("costs", {})),
                n_max=int(doc.get("n_max", DEFAULT_N_MAX)),
                uncouple_side=SIDE(doc.get("uncouple_side", SIDE.REAR.value)),
                couple_side=SIDE(doc.get("couple_side", SIDE.REAR.value)),
                allow_replacement=bool(doc.get("allow_replacement", True)),
                strict_end_inventory=bool(doc.get("strict_end_inventory", False)),
                horizon_start=int(doc.get("horizon_start", 0)),
                horizon_end=None if doc.get("horizon_end") is None else int(doc["horizon_end"]),
                name=str(doc.get("name", name)),
            )
            arcs = [InstanceFactory.direct_arc(d) for d in doc.get("direct_arcs", [])]
        except KeyError as e:
            raise InstanceFormatError(f"missing field {e}") from None
        except (TypeError, ValueError) as e:
            raise InstanceFormatError(str(e)) from None
        trips = {t.id for t in instance.trips}
        arcs = [
            DirectArcSpec(a.pred_trip, a.succ_trip, a.unit_type, a.station, a.pull_in_time, a.pull_out_time,
                          connection_between(instance, a.pred_trip, a.succ_trip) if a.pred_trip in trips else None)
            for a in arcs
        ]
        return replace(instance, direct_arcs=tuple(arcs))

    @staticmethod
    def from_file(path: str | Path) -> Instance:
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise InstanceFormatError(f"{path}: {e}") from None
        logger.debug("read instance %s", path)
        return InstanceFactory.from_dict(doc, name=path.stem)
