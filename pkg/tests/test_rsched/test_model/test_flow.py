import unittest

from rsched.data.rs_types import VARIANT
from rsched.errors import DecompositionFailure, NonConservingInput
from rsched.manifest.catalog import two_trip
from rsched.model.flow import base_residuals, decompose_paths, project_base_flow
from rsched.model.formulation import assemble
from rsched.model.hypergraph import build
from rsched.solve.branch_bound import solve_ip


class FlowTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.hd = build(two_trip(), VARIANT.HD)
        self.x = solve_ip(assemble(self.hd), exact=True).values

    def test_project_base_flow_conserves(self):
        base = project_base_flow(self.hd, self.x)
        assert base_residuals(self.hd, base) == {}

    def test_non_conserving_input(self):
        with self.assertRaises(NonConservingInput):
            project_base_flow(self.hd, {"trip.t1.r": 1})

    def test_decompose_paths(self):
        decomposition = decompose_paths(self.hd, self.x)
        # two red units and one blue unit start in the depots
        assert len(decomposition.paths) == 3
        assert sorted(p.unit_type for p in decomposition.paths) == ["b", "r", "r"]
        assert decomposition.incidence() == {a: v for a, v in project_base_flow(self.hd, self.x).items() if v}
        assert " -> " in str(decomposition.paths[0])

    def test_decompose_rejects_bad_flow(self):
        with self.assertRaises(DecompositionFailure):
            decompose_paths(self.hd, {"trip.t1.r": 1})
