import unittest

from rsched.analysis.variants import all_arcs, arc_role, graph_for, solve_variant
from rsched.config import Settings
from rsched.data.rs_types import SOLVE_STATUS, VARIANT
from rsched.manifest.catalog import two_trip
from rsched.model.composition import CompositionGraph


class VariantsTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.instance = two_trip()

    def test_graph_for(self):
        assert isinstance(graph_for(self.instance, VARIANT.C), CompositionGraph)
        assert graph_for(self.instance, VARIANT.hA).variant is VARIANT.hA

    def test_arc_roles(self):
        cg = graph_for(self.instance, VARIANT.C)
        roles = {h.id: arc_role(cg, h) for h in all_arcs(cg)}
        assert roles["trip.t1.rr"] == "trip"
        assert roles["chg.c1.rr~r"] == "change"
        assert roles["dev+.A.r"] == "deviation"
        hd = graph_for(self.instance, VARIANT.HD)
        assert arc_role(hd, hd.arc("park.A.r.0")) == "depot"
        assert arc_role(hd, hd.arc("in.t1.rr.2")) == "depot"

    def test_solve_variant(self):
        lp = solve_variant(self.instance, VARIANT.hD, True, Settings(exact=True))
        assert lp.solution.status is SOLVE_STATUS.OPTIMAL
        assert lp.solution.objective <= 55
        assert lp.model.options.relax
        ip = solve_variant(self.instance, VARIANT.hD, False, Settings(exact=True), graph=lp.graph)
        assert ip.graph is lp.graph
        assert ip.solution.objective == 55
