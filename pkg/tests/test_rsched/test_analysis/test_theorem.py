import math
import unittest
from fractions import Fraction

from rsched.analysis.theorem import (judge, relation_variants, verdicts_from_values, verify_corollary_projection,
                                     verify_theorem1)
from rsched.data.rs_types import VARIANT, VERDICT
from rsched.manifest.catalog import flow_constraint_gap, situation_1, situation_2, two_trip


def _by_relation(verdicts) -> dict:
    return {v.relation: v for v in verdicts}


class JudgeTestCase(unittest.TestCase):
    def test_relation_variants(self):
        assert relation_variants("a", False) == (VARIANT.HA, VARIANT.HD)
        assert relation_variants("a", True) == (VARIANT.HA_CLOSURE, VARIANT.HD)
        assert relation_variants("c", True) == (VARIANT.HA_CLOSURE, VARIANT.hA_CLOSURE)
        assert relation_variants("e", True) == (VARIANT.HD, VARIANT.C)

    def test_exact_verdicts(self):
        assert judge("e", Fraction(55), Fraction(55), False, True) is VERDICT.EQUALITY_HOLDS
        assert judge("e", Fraction(56), Fraction(55), False, True) is VERDICT.VIOLATION
        assert judge("d", Fraction(25), Fraction(20), False, True) is VERDICT.STRICT_GAP
        assert judge("d", Fraction(20), Fraction(20), False, True) is VERDICT.INEQUALITY_HOLDS
        assert judge("d", Fraction(19), Fraction(20), False, True) is VERDICT.VIOLATION
        assert judge("a", Fraction(25), Fraction(20), False, True) is VERDICT.STRICT_GAP
        assert judge("a", Fraction(25), Fraction(20), True, True) is VERDICT.VIOLATION

    def test_float_and_infeasible_verdicts(self):
        assert judge("e", 55.0, 55.0 + 1e-9, False, False) is VERDICT.TOLERANCE_EQUAL
        assert judge("e", 55.0, 55.0, False, False) is VERDICT.EQUALITY_HOLDS
        assert judge("d", None, 20, False, True) is VERDICT.STRICT_GAP
        assert judge("d", None, None, False, True) is VERDICT.INEQUALITY_HOLDS
        assert judge("d", 20, math.inf, False, True) is VERDICT.VIOLATION

    def test_verdicts_skip_missing_sides(self):
        values = {(VARIANT.HD, "IP"): 25, (VARIANT.hD, "IP"): 20}
        verdicts = verdicts_from_values(values, False, True)
        assert [(v.relation, v.mode, v.verdict) for v in verdicts] == [("d", "IP", VERDICT.STRICT_GAP)]
        assert str(verdicts[0]) == "d) IP HD=25 hD=20: StrictGap"


class VerifyTheoremTestCase(unittest.TestCase):
    def test_two_trip_holds_with_the_closure(self):
        for mode in ("LP", "IP"):
            verdicts = _by_relation(verify_theorem1(two_trip(), mode, True))
            assert set(verdicts) == {"a", "b", "c", "d", "e"}
            assert all(v.verdict is not VERDICT.VIOLATION for v in verdicts.values()), mode
            assert verdicts["a"].verdict is VERDICT.EQUALITY_HOLDS
            assert verdicts["e"].verdict is VERDICT.EQUALITY_HOLDS

    def test_two_trip_ip_values(self):
        verdicts = _by_relation(verify_theorem1(two_trip(), "IP", False))
        assert verdicts["e"].lhs == verdicts["e"].rhs == 55
        assert verdicts["d"].rhs == 55

    def test_situation_2_charges_half_an_action(self):
        d = _by_relation(verify_theorem1(situation_2(), "IP", False))["d"]
        assert (d.lhs, d.rhs) == (25, 20)
        assert d.verdict is VERDICT.STRICT_GAP

    def test_situation_2_gap_survives_the_relaxation(self):
        lp = _by_relation(verify_theorem1(situation_2(), "LP", False))
        assert lp["c"].verdict is VERDICT.STRICT_GAP
        assert lp["d"].verdict is VERDICT.STRICT_GAP
        assert (lp["d"].lhs, lp["d"].rhs) == (25, 20)
        ip = _by_relation(verify_theorem1(situation_2(), "IP", False))
        assert ip["d"].lhs > lp["d"].rhs

    def test_situation_1_small_models_undercut(self):
        verdicts = _by_relation(verify_theorem1(situation_1(), "IP", False))
        assert verdicts["c"].verdict is VERDICT.STRICT_GAP
        assert verdicts["d"].verdict is VERDICT.STRICT_GAP
        assert verdicts["e"].verdict is VERDICT.EQUALITY_HOLDS

    def test_mode_check(self):
        with self.assertRaises(ValueError):
            verify_theorem1(two_trip(), "MIP", False)


class ProjectionTestCase(unittest.TestCase):
    def test_two_trip_projections_agree(self):
        report = verify_corollary_projection(two_trip())
        assert report.equal
        assert len(report.c) == 4
        assert report.hd_extra == frozenset()

    def test_flow_constraint_gap_without_connection_constraints(self):
        report = verify_corollary_projection(flow_constraint_gap(), connection_constraints=False)
        assert not report.equal
        assert report.hd_extra
        assert report.c < report.hd
