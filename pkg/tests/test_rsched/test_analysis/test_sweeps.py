import unittest
from dataclasses import replace

from rsched.analysis.costs import cost_breakdown
from rsched.analysis.theorem import verify_corollary_projection, verify_theorem1
from rsched.analysis.variants import graph_for, solve_variant
from rsched.config import Settings
from rsched.data.rs_types import SOLVE_STATUS, VARIANT, VERDICT
from rsched.errors import InfeasibleInstance
from rsched.gen.generator import GenConfig, generate
from rsched.model.flow import base_residuals, decompose_paths, project_base_flow
from rsched.model.hypergraph import Hypergraph
from rsched.solve.oracle import enumerate_oracle

FLOAT = Settings(exact=False, oracle_max_units=6)


def _tiny(seed: int) -> GenConfig:
    """At most eight trips on one unit type, small enough for exhaustive checks."""
    return GenConfig(seed=seed, lines=1 + seed % 2, trips_per_line=2 + seed % 3, unit_types=1, n_max=2,
                     split_fraction=0.3 if seed % 10 == 0 else 0.0)


class TheoremSweepTestCase(unittest.TestCase):
    def test_generated_seeds(self):
        checked = 0
        for seed in range(1, 51):
            cfg = GenConfig(seed=seed, unit_types=1 + seed % 2, split_fraction=0.25 if seed % 3 == 0 else 0.0)
            try:
                instance = generate(cfg)
                for mode in ("LP", "IP"):
                    for v in verify_theorem1(instance, mode, True, FLOAT):
                        assert v.verdict is not VERDICT.VIOLATION, (seed, str(v))
                        if v.relation in ("a", "b", "e"):
                            assert v.verdict in (VERDICT.EQUALITY_HOLDS, VERDICT.TOLERANCE_EQUAL), (seed, str(v))
            except InfeasibleInstance:
                continue
            checked += 1
        assert checked >= 25


class CorollarySweepTestCase(unittest.TestCase):
    def test_random_small_instances(self):
        checked = 0
        for seed in range(1, 11):
            cfg = GenConfig(seed=seed, lines=1, trips_per_line=4 + seed % 3, unit_types=1, n_max=2)
            try:
                report = verify_corollary_projection(generate(cfg), settings=FLOAT)
            except InfeasibleInstance:
                continue
            assert report.equal, (seed, report.hd_extra)
            checked += 1
        assert checked >= 5


class OracleSweepTestCase(unittest.TestCase):
    def test_tiny_instances(self):
        variants = (VARIANT.HD, VARIANT.hD, VARIANT.C, VARIANT.HA, VARIANT.hA, VARIANT.HA_CLOSURE)
        checked = 0
        for seed in range(1, 101):
            variant = variants[seed % len(variants)]
            try:
                g = graph_for(generate(_tiny(seed)), variant)
            except InfeasibleInstance:
                continue
            instance = g.instance
            expected = enumerate_oracle(g, settings=FLOAT)
            ip = solve_variant(instance, variant, False, FLOAT, graph=g).solution
            assert expected.status is ip.status, (seed, variant.value)
            if ip.status is SOLVE_STATUS.OPTIMAL:
                self.assertAlmostEqual(float(ip.objective), float(expected.objective), places=6,
                                       msg=f"seed {seed} {variant.value}")
                lp = solve_variant(instance, variant, True, FLOAT, graph=g).solution
                assert lp.objective <= ip.objective + 1e-6, (seed, variant.value)
            checked += 1
        assert checked >= 50


class FlowSweepTestCase(unittest.TestCase):
    def test_every_integer_solution(self):
        for seed in range(1, 21):
            cfg = replace(_tiny(seed), unit_types=1 + seed % 2)
            try:
                instance = generate(cfg)
                solved = [solve_variant(instance, v, False, FLOAT) for v in (VARIANT.HD, VARIANT.hD, VARIANT.C)]
            except InfeasibleInstance:
                continue
            for s in solved:
                if s.solution.status is not SOLVE_STATUS.OPTIMAL:
                    continue
                breakdown = cost_breakdown(instance, s)
                self.assertAlmostEqual(float(breakdown.total), float(s.solution.objective), places=6,
                                       msg=f"seed {seed} {s.variant.value}")
                if not isinstance(s.graph, Hypergraph):
                    continue
                x = {a: round(v) for a, v in s.solution.values.items()}
                base = project_base_flow(s.graph, x)
                assert base_residuals(s.graph, base) == {}, (seed, s.variant.value)
                assert decompose_paths(s.graph, x).incidence() == {a: v for a, v in base.items() if v}
