import json
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from rsched.data.rs_types import CONNECTION_KIND
from rsched.errors import InstanceFormatError
from rsched.extract.instance_reader import InstanceFactory, to_fraction
from rsched.load.instance_writer import instance_to_dict
from rsched.manifest.catalog import two_trip


class InstanceFactoryTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.doc = instance_to_dict(two_trip())

    def test_to_fraction(self):
        assert to_fraction(0.1) == Fraction(1, 10)
        assert to_fraction("2/3") == Fraction(2, 3)
        assert to_fraction(7) == 7
        with self.assertRaises(InstanceFormatError):
            to_fraction(True)
        with self.assertRaises(InstanceFormatError):
            to_fraction("lots")

    def test_from_dict(self):
        instance = InstanceFactory.from_dict(self.doc)
        assert instance == two_trip()
        assert instance.direct_arcs[0].connection == "c1"
        assert instance.connection("c1").kind is CONNECTION_KIND.ONE_TO_ONE

    def test_defaults(self):
        for key in ("costs", "n_max", "horizon_end", "direct_arcs", "name"):
            self.doc.pop(key, None)
        instance = InstanceFactory.from_dict(self.doc, name="bare")
        assert instance.name == "bare"
        assert instance.n_max == 5
        assert instance.cost_params.shunting_per_action == 10
        assert instance.direct_arcs == ()

    def test_format_errors(self):
        with self.assertRaises(InstanceFormatError):
            InstanceFactory.from_dict([])
        del self.doc["depots"]
        with self.assertRaises(InstanceFormatError):
            InstanceFactory.from_dict(self.doc)

    def test_bad_fields(self):
        self.doc["connections"][0]["kind"] = "ManyToMany"
        with self.assertRaises(InstanceFormatError):
            InstanceFactory.from_dict(self.doc)
        self.doc = instance_to_dict(two_trip())
        del self.doc["trips"][0]["dep_time"]
        with self.assertRaises(InstanceFormatError):
            InstanceFactory.from_dict(self.doc)

    def test_from_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "shuttle.json"
            self.doc.pop("name")
            path.write_text(json.dumps(self.doc), encoding="utf-8")
            assert InstanceFactory.from_file(path).name == "shuttle"
            path.write_text("{", encoding="utf-8")
            with self.assertRaises(InstanceFormatError):
                InstanceFactory.from_file(path)
            path.write_bytes(b"\xff\xfe{}")
            with self.assertRaises(InstanceFormatError):
                InstanceFactory.from_file(path)
