import json
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from rsched.extract.instance_reader import InstanceFactory
from rsched.load.instance_writer import dumps_instance, number, write_instance
from rsched.manifest.catalog import canonical_instances


class InstanceWriterTestCase(unittest.TestCase):
    def test_number(self):
        assert number(Fraction(50)) == 50
        assert number(Fraction(1, 10)) == 0.1
        assert number(Fraction(1, 3)) == "1/3"

    def test_catalog_survives_a_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            for instance in canonical_instances().values():
                path = Path(tmp) / f"{instance.name}.json"
                write_instance(instance, path)
                assert InstanceFactory.from_file(path) == instance, instance.name

    def test_document(self):
        doc = json.loads(dumps_instance(canonical_instances()["TwoTrip"]))
        assert doc["name"] == "TwoTrip"
        assert doc["costs"]["mileage_per_carriage_km"] == 0.1
        assert doc["direct_arcs"][0]["station"] == "B"
        assert "connection" not in doc["direct_arcs"][0]
