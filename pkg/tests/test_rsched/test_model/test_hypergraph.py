import unittest
from dataclasses import replace
from fractions import Fraction

from rsched.data.rs_types import ARC_KIND, NODE_KIND, VARIANT
from rsched.errors import InfeasibleInstance, VariantMismatch
from rsched.manifest.catalog import empty, two_trip
from rsched.model.hypergraph import build


class HypergraphTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.instance = two_trip()
        self.hd = build(self.instance, VARIANT.HD)

    def test_trip_and_change_arcs(self):
        assert self.hd.trip_index["t1"] == ("trip.t1.b", "trip.t1.r", "trip.t1.rr")
        assert len(self.hd.connection_index["c1"]) == 5
        assert self.hd.arc("trip.t1.rr").cost == Fraction(30)
        assert self.hd.arc("chg.c1.rr~r").cost == Fraction(10)
        assert len(self.hd.arc("trip.t1.rr").base_arcs) == 2

    def test_balances_close_per_unit_type(self):
        assert set(self.hd.balance_totals().values()) == {0}
        assert len(self.hd.arcs_of_kind(ARC_KIND.INVENTORY_DEVIATION)) == 8

    def test_timelines_hold_every_depot_event(self):
        timeline = self.hd.timelines[("B", "r")]
        assert [v.time for v in timeline] == [0, 120, 180, 300]
        assert all(v.kind is NODE_KIND.DEPOT_TIMELINE for v in timeline)
        assert len([h for h in self.hd.parking if h.startswith("park.B.r.")]) == 3

    def test_strict_end_inventory_drops_deviation_arcs(self):
        hd = build(replace(self.instance, strict_end_inventory=True), VARIANT.HD)
        assert hd.arcs_of_kind(ARC_KIND.INVENTORY_DEVIATION) == []

    def test_connection_without_changes_is_infeasible(self):
        blocked = replace(self.instance.connections[0], allowed_changes=())
        with self.assertRaises(InfeasibleInstance):
            build(replace(self.instance, connections=(blocked,)), VARIANT.HD)

    def test_small_variant_merges_change_copies(self):
        hd_small = build(self.instance, VARIANT.hD)
        assert hd_small.connection_index["c1"] == ("chg.c1.k1", "chg.c1.k2", "chg.c1.k3")
        assert set(hd_small.arc("chg.c1.k2").copies) == {"chg.c1.r~r", "chg.c1.r~rr", "chg.c1.rr~r"}
        assert all(h.cost == 0 for h in hd_small.arcs_of_kind(ARC_KIND.CONNECTION_CHANGE))
        assert hd_small.arc("in.t1.r.2").cost == Fraction(10)
        assert all(v.composition is None for v in hd_small.nodes)

    def test_direct_arcs_replace_timelines(self):
        ha = build(self.instance, VARIANT.HA)
        direct = ha.arcs_of_kind(ARC_KIND.DIRECT)
        assert direct and all(h.depot == ("B", "r") for h in direct)
        assert all(h.path[0].startswith("in.t1.") and h.path[-1].startswith("out.t2.") for h in direct)
        assert ha.timelines[("B", "r")] == (self.hd.timelines[("B", "r")][0], self.hd.timelines[("B", "r")][-1])

    def test_closure_adds_blue_arcs(self):
        declared = build(self.instance, VARIANT.HA).arcs_of_kind(ARC_KIND.DIRECT)
        closure = build(self.instance, VARIANT.HA_CLOSURE).arcs_of_kind(ARC_KIND.DIRECT)
        assert len(closure) > len(declared)
        assert any(h.depot == ("B", "b") for h in closure)

    def test_c_is_not_built_here(self):
        with self.assertRaises(VariantMismatch):
            build(self.instance, VARIANT.C)

    def test_empty_instance(self):
        g = build(empty(), VARIANT.HD)
        assert g.trip_index == {}
        assert [h.kind for h in g.hyperarcs].count(ARC_KIND.PARKING) == 1
