import unittest

from rsched.analysis.replay import replay
from rsched.analysis.variants import solve_variant
from rsched.config import Settings
from rsched.data.rs_types import VARIANT
from rsched.errors import VariantMismatch
from rsched.manifest.catalog import situation_1, two_trip


class ReplayTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.settings = Settings(exact=True)

    def test_two_trip_small_optimum_is_legal(self):
        solved = solve_variant(two_trip(), VARIANT.hD, False, self.settings)
        result = replay(solved.graph, solved.solution.values)
        assert result.feasible, result.reason
        assert result.cost == 55
        assert result.values["chg.c1.rr~r"] == 1

    def test_situation_1_small_optimum_is_illegal(self):
        solved = solve_variant(situation_1(), VARIANT.hD, False, self.settings)
        result = replay(solved.graph, solved.solution.values)
        assert not result.feasible
        assert "no composition-resolved copy" in result.reason

    def test_full_variants_are_rejected(self):
        solved = solve_variant(two_trip(), VARIANT.HD, False, self.settings)
        with self.assertRaises(VariantMismatch):
            replay(solved.graph, solved.solution.values)
