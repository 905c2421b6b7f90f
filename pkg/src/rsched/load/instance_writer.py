from __future__ import annotations
from fractions import Fraction
import json
from pathlib import Path

from rsched.data.instance import Instance


def _is_finite_decimal(q: Fraction) -> bool:
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def number(value) -> int | float | str:
    """Integers stay integers, finite decimals become floats, other fractions are written as 'p/q'."""
    q = Fraction(value)
    if q.denominator == 1:
        return q.numerator
    if _is_finite_decimal(q):
        return float(q)
    return f"{q.numerator}/{q.denominator}"


def instance_to_dict(instance: Instance) -> dict:
    doc = {
        "name": instance.name,
        "n_max": instance.n_max,
        "unit_types": [
            {"id": u.id, "length_units": u.length_units, "seats": u.seats,
             **({"capacity": u.capacity} if u.capacity is not None else {})}
            for u in instance.unit_types
        ],
        "compositions": [{"id": p.id, "units": list(p.units)} for p in instance.compositions],
        "trips": [
            {"id": t.id, "dep_station": t.dep_station, "arr_station": t.arr_station, "dep_time": t.dep_time,
             "arr_time": t.arr_time, "distance_km": number(t.distance_km), "demand_seats": t.demand_seats,
             "allowed_compositions": list(t.allowed_compositions)}
            for t in instance.trips
        ],
        "connections": [
            {"id": c.id, "kind": c.kind.value, "predecessors": list(c.predecessors), "successors": list(c.successors),
             **({"allowed_changes": [list(pair) for pair in c.allowed_changes]}
                if c.allowed_changes is not None else {})}
            for c in instance.connections
        ],
        "depots": [
            {"station": d.station, "unit_type": d.unit_type, "start_inventory": d.start_inventory,
             "target_end_inventory": d.target_end_inventory}
            for d in instance.depots
        ],
        "costs": {
            "mileage_per_carriage_km": number(instance.cost_params.mileage_per_carriage_km),
            "seat_shortage_per_seat": number(instance.cost_params.seat_shortage_per_seat),
            "shunting_per_action": number(instance.cost_params.shunting_per_action),
            "ending_deviation_per_unit": number(instance.cost_params.ending_deviation_per_unit),
        },
        "uncouple_side": instance.uncouple_side.value,
        "couple_side": instance.couple_side.value,
        "allow_replacement": instance.allow_replacement,
        "strict_end_inventory": instance.strict_end_inventory,
        "horizon_start": instance.horizon_start,
        "horizon_end": instance.horizon_end,
    }
    if instance.direct_arcs:
        doc["direct_arcs"] = [
            {"pred_trip": a.pred_trip, "succ_trip": a.succ_trip, "unit_type": a.unit_type, "station": a.station,
             "pull_in_time": a.pull_in_time, "pull_out_time": a.pull_out_time}
            for a in instance.direct_arcs
        ]
    return doc


def dumps_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2, ensure_ascii=False) + "\n"


def write_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(dumps_instance(instance), encoding="utf-8")
