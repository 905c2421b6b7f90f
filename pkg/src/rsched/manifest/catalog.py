from __future__ import annotations
from fractions import Fraction
from typing import Callable

from rsched.data.instance import (Composition, Connection, CostParams, Depot, DirectArcSpec, Instance, Trip,
                                  UnitType)
from rsched.data.rs_types import CONNECTION_KIND
from rsched.errors import NotFound

RED = UnitType("r", length_units=3, seats=200)
BLUE = UnitType("b", length_units=4, seats=300)


def _compositions(*ids: str) -> tuple[Composition, ...]:
    return tuple(Composition(p, tuple(p)) for p in ids)


def _shuttle(t1: tuple, t2: tuple) -> tuple[tuple[Trip, Trip], tuple[Connection, ...]]:
    """t1 runs A->B, t2 runs B->A after it; the two form one OneToOne connection at B."""
    trips = (
        Trip("t1", "A", "B", 60, 120, Fraction(t1[0]), t1[1], t1[2]),
        Trip("t2", "B", "A", 180, 240, Fraction(t2[0]), t2[1], t2[2]),
    )
    return trips, (Connection("c1", CONNECTION_KIND.ONE_TO_ONE, ("t1",), ("t2",)),)


def two_trip() -> Instance:
    """Two trips with one connection; the optimum uncouples a red unit at B for 55."""
    trips, connections = _shuttle((50, 380, ("b", "r", "rr")), (50, 150, ("b", "r", "rr")))
    return Instance(
        unit_types=(RED, BLUE),
        compositions=_compositions("b", "r", "rr"),
        trips=trips,
        connections=connections,
        depots=(
            Depot("A", "b", 1, 1), Depot("A", "r", 2, 1),
            Depot("B", "b", 0, 0), Depot("B", "r", 0, 1),
        ),
        n_max=2,
        direct_arcs=(DirectArcSpec("t1", "t2", "r", "B", 120, 180, "c1"),),
        horizon_end=300,
        name="TwoTrip",
    )


def situation_1() -> Instance:
    """
    Without replacement, rr cannot turn into rb at B. The small models still
    assemble that change from an uncoupling and a coupling and so avoid the
    end inventory deviation every legal schedule pays.
    """
    trips, connections = _shuttle((10, 300, ("r", "rr")), (10, 300, ("r", "rr", "rb")))
    return Instance(
        unit_types=(RED, BLUE),
        compositions=_compositions("r", "rr", "rb"),
        trips=trips,
        connections=connections,
        depots=(
            Depot("A", "b", 0, 1), Depot("A", "r", 2, 1),
            Depot("B", "b", 1, 0), Depot("B", "r", 0, 1),
        ),
        n_max=2,
        allow_replacement=False,
        horizon_end=300,
        name="Situation1",
    )


def situation_2() -> Instance:
    """rrr -> rr costs a full shunting action, the small models charge half of one."""
    trips, connections = _shuttle((10, 400, ("rrr",)), (10, 400, ("r", "rr")))
    return Instance(
        unit_types=(RED,),
        compositions=_compositions("r", "rr", "rrr"),
        trips=trips,
        connections=connections,
        depots=(Depot("A", "r", 3, 2), Depot("B", "r", 0, 1)),
        n_max=3,
        horizon_end=300,
        name="Situation2",
    )


def flow_constraint_gap() -> Instance:
    """rb cannot become br at B except through the depot, which the connection rows forbid."""
    trips, connections = _shuttle((10, 300, ("rb",)), (10, 500, ("r", "br")))
    return Instance(
        unit_types=(RED, BLUE),
        compositions=_compositions("r", "rb", "br"),
        trips=trips,
        connections=connections,
        depots=(
            Depot("A", "b", 1, 1), Depot("A", "r", 1, 1),
            Depot("B", "b", 0, 0), Depot("B", "r", 0, 0),
        ),
        cost_params=CostParams(ending_deviation_per_unit=Fraction(0)),
        n_max=2,
        horizon_end=300,
        name="FlowConstraintGap",
    )


def split_yard() -> Instance:
    """
    t1 splits at B into t2 back to A and t3 on to C. A four-unit t1 leaves two
    units at B; a two-unit t1 needs one more unit from B for a double t3.
    """
    trips = (
        Trip("t1", "A", "B", 60, 120, Fraction(40), 0, ("rr", "rrrr")),
        Trip("t2", "B", "A", 180, 240, Fraction(40), 0, ("r",)),
        Trip("t3", "B", "C", 200, 260, Fraction(40), 0, ("r", "rr")),
    )
    return Instance(
        unit_types=(RED,),
        compositions=_compositions("r", "rr", "rrrr"),
        trips=trips,
        connections=(Connection("c1", CONNECTION_KIND.ONE_TO_TWO, ("t1",), ("t2", "t3")),),
        depots=(Depot("A", "r", 4, 3), Depot("B", "r", 0, 0), Depot("C", "r", 0, 1)),
        n_max=4,
        horizon_end=300,
        name="SplitYard",
    )


def empty() -> Instance:
    return Instance(unit_types=(RED,), compositions=_compositions("r"), depots=(Depot("A", "r", 1, 1),),
                    n_max=1, name="Empty")


class InstanceCatalog:
    def __init__(self) -> None:
        self.__builders: dict[str, Callable[[], Instance]] = {
            "TwoTrip": two_trip,
            "Situation1": situation_1,
            "Situation2": situation_2,
            "FlowConstraintGap": flow_constraint_gap,
            "SplitYard": split_yard,
            "Empty": empty,
        }

    @property
    def names(self) -> list[str]:
        return list(self.__builders)

    def get(self, name: str) -> Instance:
        try:
            return self.__builders[name]()
        except KeyError:
            raise NotFound(f"no built-in instance named {name!r}, try one of {', '.join(self.names)}") from None


def canonical_instances() -> dict[str, Instance]:
    catalog = InstanceCatalog()
    return {name: catalog.get(name) for name in catalog.names}
