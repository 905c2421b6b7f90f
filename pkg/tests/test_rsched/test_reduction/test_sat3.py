import unittest
from itertools import product

from rsched.config import Settings
from rsched.data.instance import validate
from rsched.reduction.sat3 import Cnf3, brute_force_sat, random_3sat, reduce_3sat, verify_reduction


class Cnf3TestCase(unittest.TestCase):
    def test_validation(self):
        with self.assertRaises(ValueError):
            Cnf3(0, ())
        with self.assertRaises(ValueError):
            Cnf3(2, ((1, 2),))
        with self.assertRaises(ValueError):
            Cnf3(2, ((1, 2, 3),))

    def test_brute_force(self):
        assert brute_force_sat(Cnf3(1, ((1, 1, 1),))) == {1: True}
        assert brute_force_sat(Cnf3(1, ((1, 1, 1), (-1, -1, -1)))) is None

    def test_random_formulas(self):
        f = random_3sat(5, 12, seed=3)
        assert f == random_3sat(5, 12, seed=3)
        assert len(f.clauses) == 12
        assert all(len({abs(lit) for lit in c}) == 3 for c in f.clauses)
        planted = random_3sat(4, 30, seed=1, planted=True)
        assert brute_force_sat(planted) is not None


class ReduceTestCase(unittest.TestCase):
    def test_instance_shape(self):
        f = Cnf3(2, ((1, -2, 2), (-1, -1, 2), (1, 2, 2)))
        instance, certificate = reduce_3sat(f)
        # both variables sit in all three clauses
        assert len(instance.trips) == 4 * 3 + 2 * (2 * 3 + 2)
        assert validate(instance) == []
        assert instance.strict_end_inventory
        assert len(instance.unit_types) == 1
        assert set(certificate.clause_trips) == {1, 2, 3}
        assert certificate.literal_trips[1][0] == "x1s"
        assert {d.station for d in instance.depots} == {"A", "B", "Q1", "Q2", "Q3"}

    def test_trip_count_follows_occurrences(self):
        instance, _ = reduce_3sat(Cnf3(1, ((1, 1, 1),)))
        assert len(instance.trips) == 8

        # x1 in one clause, x2 and x3 nowhere
        instance, certificate = reduce_3sat(Cnf3(3, ((1, -1, 1),)))
        assert len(instance.trips) == 4 + (2 + 2) + 2 + 2
        assert certificate.literal_trips[2] == ("x2s", "x2e")
        assert certificate.literal_trips[1] == ("x1s", "x1t1", "x1n1", "x1e")

        f = random_3sat(6, 9, seed=5)
        k = {j: sum(any(abs(lit) == j for lit in c) for c in f.clauses) for j in range(1, 7)}
        instance, _ = reduce_3sat(f)
        assert len(instance.trips) == 4 * 9 + sum(2 * k_j + 2 for k_j in k.values())
        assert validate(instance) == []

    def test_single_clause_is_feasible(self):
        verdict = verify_reduction(Cnf3(1, ((1, 1, 1),)))
        assert verdict.agree
        assert verdict.feasible
        assert verdict.assignment == {1: True}
        assert str(verdict) == "Agree(sat=True, feasible=True)"

    def test_contradiction_is_infeasible(self):
        verdict = verify_reduction(Cnf3(1, ((1, 1, 1), (-1, -1, -1))))
        assert verdict.agree
        assert not verdict.satisfiable and not verdict.feasible

    def test_shared_station_cannot_lend_across_clauses(self):
        # x2 and not x2 clash; units lent by the x1 and x3 trains must not cover either of them
        f = Cnf3(3, ((1, 1, 1), (2, 2, 2), (1, 3, 3), (-2, -2, -2)))
        verdict = verify_reduction(f)
        assert verdict.agree
        assert not verdict.feasible

    def test_pigeonhole_is_infeasible(self):
        # two pigeons, one hole: p1, p2, not both
        f = Cnf3(2, ((1, 1, 1), (2, 2, 2), (-1, -2, -2)))
        verdict = verify_reduction(f)
        assert brute_force_sat(f) is None
        assert verdict.agree and not verdict.feasible


class ReductionSweepTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.settings = Settings(exact=False)

    def test_every_two_variable_two_clause_pattern(self):
        # a clause (a or a or b) for every literal pair over x1, x2: 16 clauses, 256 formulas
        literals = (1, -1, 2, -2)
        clauses = [(a, a, b) for a, b in product(literals, repeat=2)]
        count = 0
        for first, second in product(clauses, repeat=2):
            f = Cnf3(2, (first, second))
            verdict = verify_reduction(f, self.settings)
            assert verdict.agree, (f.clauses, str(verdict))
            count += 1
        assert count == 256

    def test_random_four_variable_six_clause_formulas(self):
        for seed in range(100):
            f = random_3sat(4, 6, seed=seed)
            verdict = verify_reduction(f, self.settings)
            assert verdict.agree, (seed, f.clauses, str(verdict))
            if verdict.feasible:
                assert f.satisfied_by(verdict.assignment), seed
