import unittest
from dataclasses import replace
from fractions import Fraction

from rsched.data.instance import Composition, Connection, Depot, Instance, Trip
from rsched.data.rs_types import CONNECTION_KIND, SIDE
from rsched.manifest.catalog import RED, situation_1, split_yard, two_trip
from rsched.model.changes import enumerate_changes, kept_length


class KeptLengthTestCase(unittest.TestCase):
    def test_rear_uncoupling(self):
        assert kept_length(("r", "b"), ("r",), SIDE.REAR, SIDE.REAR) == 1
        assert kept_length(("r", "r"), ("r", "r"), SIDE.REAR, SIDE.REAR) == 2

    def test_front_uncoupling_keeps_the_rear_block(self):
        assert kept_length(("r", "b"), ("r",), SIDE.FRONT, SIDE.REAR) is None
        assert kept_length(("r", "b"), ("b",), SIDE.FRONT, SIDE.REAR) == 1

    def test_no_common_block(self):
        assert kept_length(("b",), ("r",), SIDE.REAR, SIDE.REAR) is None

    def test_replacement(self):
        assert kept_length(("r", "r"), ("r", "b"), SIDE.REAR, SIDE.REAR) == 1
        assert kept_length(("r", "r"), ("r", "b"), SIDE.REAR, SIDE.REAR, allow_replacement=False) is None


class EnumerateChangesTestCase(unittest.TestCase):
    def test_two_trip_changes(self):
        instance = two_trip()
        found = {ch.id: ch for ch in enumerate_changes(instance, instance.connection("c1"))}
        assert set(found) == {"chg.c1.b~b", "chg.c1.r~r", "chg.c1.r~rr", "chg.c1.rr~r", "chg.c1.rr~rr"}

        uncouple = found["chg.c1.rr~r"]
        assert uncouple.nu_in == {"r": 1}
        assert uncouple.nu_out == {}
        assert uncouple.actions == 1
        assert uncouple.pred_trip == "t1" and uncouple.succ_trip == "t2"
        assert len(uncouple.moves) == 1

        assert found["chg.c1.r~rr"].nu_out == {"r": 1}
        assert found["chg.c1.rr~rr"].actions == 0
        assert len(found["chg.c1.rr~rr"].moves) == 2

    def test_replacement_is_dropped_when_not_allowed(self):
        instance = situation_1()
        ids = [ch.id for ch in enumerate_changes(instance, instance.connection("c1"))]
        assert "chg.c1.rr~rb" not in ids
        assert "chg.c1.r~rb" in ids

        allowed = replace(instance, allow_replacement=True)
        found = {ch.id: ch for ch in enumerate_changes(allowed, allowed.connection("c1"))}
        assert found["chg.c1.rr~rb"].actions == 2
        assert found["chg.c1.rr~rb"].nu_in == {"r": 1}
        assert found["chg.c1.rr~rb"].nu_out == {"b": 1}

    def test_allowed_changes_whitelist(self):
        instance = two_trip()
        c1 = replace(instance.connection("c1"), allowed_changes=(("rr", "r"),))
        ids = [ch.id for ch in enumerate_changes(replace(instance, connections=(c1,)), c1)]
        assert ids == ["chg.c1.rr~r"]


def _join_instance() -> Instance:
    trips = (
        Trip("a1", "A", "B", 60, 120, Fraction(10), 0, ("r",)),
        Trip("a2", "C", "B", 70, 130, Fraction(10), 0, ("rr",)),
        Trip("b", "B", "A", 180, 240, Fraction(10), 0, ("r", "rr")),
    )
    return Instance(
        unit_types=(RED,),
        compositions=(Composition("r", ("r",)), Composition("rr", ("r", "r"))),
        trips=trips,
        connections=(Connection("j1", CONNECTION_KIND.TWO_TO_ONE, ("a1", "a2"), ("b",)),),
        depots=(Depot("A", "r", 1, 1), Depot("B", "r", 0, 1), Depot("C", "r", 2, 1)),
        n_max=2,
    )


class SplitJoinTestCase(unittest.TestCase):
    def test_split_uncouples_surplus_and_couples_missing_units(self):
        instance = split_yard()
        found = {ch.id: ch for ch in enumerate_changes(instance, instance.connection("c1"))}
        assert set(found) == {"chg.c1.rr~r&r", "chg.c1.rr~r&rr", "chg.c1.rrrr~r&r", "chg.c1.rrrr~r&rr"}

        exact = found["chg.c1.rr~r&r"]
        assert exact.actions == 1 and exact.depot_actions == 0
        assert exact.uncouple_trip is None and exact.couple_trip is None

        surplus = found["chg.c1.rrrr~r&r"]
        assert surplus.uncoupled == ((3, "r"), (4, "r"))
        assert surplus.nu_in == {"r": 2}
        assert surplus.uncouple_trip == "t1"
        assert surplus.actions == 2 and surplus.depot_actions == 1
        assert {(m.pred_position, m.succ_trip, m.succ_position) for m in surplus.moves} == {(1, "t2", 1), (2, "t3", 1)}

        missing = found["chg.c1.rr~r&rr"]
        assert missing.coupled == ((2, "r"),)
        assert missing.nu_out == {"r": 1}
        assert missing.couple_trip == "t3"
        assert len(missing.moves) == 2

    def test_join_uncouples_from_the_rear_predecessor(self):
        instance = _join_instance()
        found = enumerate_changes(instance, instance.connection("j1"))
        # a single-unit b would strip a2 completely
        assert [ch.id for ch in found] == ["chg.j1.r&rr~rr"]
        ch = found[0]
        assert ch.uncoupled == ((2, "r"),)
        assert ch.uncouple_trip == "a2"
        assert {(m.pred_trip, m.succ_position) for m in ch.moves} == {("a1", 1), ("a2", 2)}

    def test_join_at_the_front_keeps_both_predecessors_linked(self):
        instance = replace(_join_instance(), uncouple_side=SIDE.FRONT)
        assert enumerate_changes(instance, instance.connection("j1")) == []
