import unittest

from rsched.errors import NotFound
from rsched.manifest.catalog import InstanceCatalog, canonical_instances


class InstanceCatalogTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.catalog = InstanceCatalog()

    def test_names(self):
        assert self.catalog.names == ["TwoTrip", "Situation1", "Situation2", "FlowConstraintGap", "SplitYard", "Empty"]
        assert {name: i.name for name, i in canonical_instances().items()} == {n: n for n in self.catalog.names}

    def test_get(self):
        assert self.catalog.get("Situation2").n_max == 3
        assert not self.catalog.get("Situation1").allow_replacement
        with self.assertRaises(NotFound):
            self.catalog.get("ThreeTrip")

    def test_fresh_instances(self):
        assert self.catalog.get("TwoTrip") == self.catalog.get("TwoTrip")
        assert self.catalog.get("TwoTrip") is not self.catalog.get("TwoTrip")
