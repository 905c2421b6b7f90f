import unittest
from dataclasses import replace

from rsched.data.instance import validate
from rsched.data.rs_types import CONNECTION_KIND
from rsched.errors import ConfigError
from rsched.gen.generator import GenConfig, generate


class GeneratorTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.cfg = GenConfig()

    def test_default_shape(self):
        instance = generate(self.cfg)
        assert instance.name == "gen-s1"
        assert len(instance.trips) == 8
        assert len(instance.connections) == 6
        assert {t.id for t in instance.trips} >= {"L0t0", "L1t3"}
        assert validate(instance) == []

    def test_seeded(self):
        assert generate(self.cfg) == generate(self.cfg)
        assert generate(self.cfg) != generate(replace(self.cfg, seed=2))

    def test_departures(self):
        trips = {t.id: t for t in generate(self.cfg).trips}
        assert trips["L1t2"].dep_time == 300 + 15 + 200
        assert trips["L1t2"].arr_time - trips["L1t2"].dep_time == 60

    def test_splits_and_joins(self):
        instance = generate(replace(self.cfg, split_fraction=1.0))
        assert len(instance.trips) == 14
        assert all(c.kind is not CONNECTION_KIND.ONE_TO_ONE for c in instance.connections)
        assert validate(instance) == []

    def test_depots_everywhere(self):
        instance = generate(replace(self.cfg, station_count=4, unit_types=1))
        assert len(instance.depots) == 4
        assert sum(d.start_inventory for d in instance.depots) == self.cfg.n_max * self.cfg.lines

    def test_bad_config(self):
        with self.assertRaises(ConfigError):
            generate(replace(self.cfg, unit_types=3))
        with self.assertRaises(ConfigError):
            replace(self.cfg, split_fraction=2.0).check()
