import unittest
from dataclasses import replace
from unittest.mock import patch

from rsched.analysis.variants import graph_for, solve_variant
from rsched.config import Settings
from rsched.data.rs_types import VARIANT
from rsched.errors import LimitExceeded
from rsched.manifest.catalog import canonical_instances, flow_constraint_gap, situation_2, two_trip
from rsched.model.formulation import ModelOptions
from rsched.model.hypergraph import build
from rsched.solve.oracle import check_limits, enumerate_oracle, feasible_projections, structural_assignments


class OracleTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.hd = build(two_trip(), VARIANT.HD)

    def test_oracle_matches_known_optimum(self):
        result = enumerate_oracle(self.hd)
        assert result.optimal
        assert result.objective == 55

    def test_structural_assignments(self):
        found = list(structural_assignments(self.hd, True))
        # each of the five changes fixes both trip compositions
        assert len(found) == 5
        assert frozenset({"trip.t1.rr", "trip.t2.r", "chg.c1.rr~r"}) in found

    def test_dropping_connection_constraints_allows_no_change(self):
        found = list(structural_assignments(self.hd, False))
        assert frozenset({"trip.t1.b", "trip.t2.r"}) in found
        assert len(found) > 5

    def test_feasible_projections(self):
        # B starts without red units, so r~rr cannot couple one there
        assert len(feasible_projections(self.hd)) == 4

    def test_limits(self):
        check_limits(self.hd, Settings())
        with self.assertRaises(LimitExceeded):
            check_limits(build(situation_2(), VARIANT.HD), Settings(oracle_max_units=2))
        with self.assertRaises(LimitExceeded):
            check_limits(self.hd, replace(Settings(), oracle_max_trips=1))

    def test_oracle_does_not_call_the_solver(self):
        with patch("rsched.solve.branch_bound.solve_ip", side_effect=AssertionError("solver called")) as solver:
            result = enumerate_oracle(self.hd)
        solver.assert_not_called()
        assert result.values == {"chg.c1.rr~r": 1, "trip.t1.rr": 1, "trip.t2.r": 1}

    def test_short_start_inventory_is_infeasible(self):
        instance = two_trip()
        starved = replace(instance, depots=tuple(replace(d, start_inventory=0) for d in instance.depots))
        assert not enumerate_oracle(build(starved, VARIANT.HD)).optimal
        assert feasible_projections(build(starved, VARIANT.HA)) == set()


class OracleAgreesWithSolverTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.settings = Settings(exact=True, oracle_max_units=4)

    def test_canonical_instances(self):
        for name, instance in canonical_instances().items():
            for variant in VARIANT:
                g = graph_for(instance, variant)
                expected = enumerate_oracle(g, settings=self.settings)
                solved = solve_variant(instance, variant, False, self.settings, graph=g)
                assert expected.status is solved.solution.status, (name, variant.value)
                if expected.optimal:
                    assert expected.objective == solved.solution.objective, (name, variant.value)

    def test_dropped_connection_constraints(self):
        instance = flow_constraint_gap()
        g = graph_for(instance, VARIANT.HD)
        expected = enumerate_oracle(g, ModelOptions(connection_constraints=False), self.settings)
        solved = solve_variant(instance, VARIANT.HD, False, self.settings, connection_constraints=False, graph=g)
        assert expected.objective == solved.solution.objective
