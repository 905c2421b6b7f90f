import json
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from rsched.analysis.compare import CompareOptions, compare
from rsched.analysis.variants import solve_variant
from rsched.config import Settings
from rsched.data.rs_types import VARIANT
from rsched.load.report_writer import dumps_report, fmt, plain, plot_rotations, render_text
from rsched.manifest.catalog import two_trip


class ReportWriterTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls) -> None:
        options = CompareOptions(variants=(VARIANT.hD, VARIANT.HD, VARIANT.C), closure=False, deterministic=True)
        cls.report = compare(two_trip(), options, Settings(exact=True))

    def test_fmt_and_plain(self):
        assert fmt(None) == "-"
        assert fmt(Fraction(55)) == "55"
        assert fmt(Fraction(1, 3)) == "0.333333"
        assert plain(Fraction(55)) == 55 and isinstance(plain(Fraction(55)), int)
        assert plain(Fraction(1, 2)) == 0.5

    def test_text_table(self):
        lines = render_text(self.report).splitlines()
        assert lines[0] == "instance TwoTrip"
        assert lines[1].split()[:5] == ["variant", "vars", "cons", "LP", "IP"]
        assert lines[2].split()[0] == "hD"
        assert "d) IP HD=55 hD=55: InequalityHolds" in lines
        assert "seconds" not in lines[1]
        assert "seconds" in render_text(self.report, include_timings=True)

    def test_json(self):
        doc = json.loads(dumps_report(self.report))
        assert doc["instance"] == "TwoTrip"
        assert [r["variant"] for r in doc["rows"]] == ["hD", "HD", "C"]
        assert doc["rows"][1]["breakdown"] == {"composition": 45.0, "coupling": 10.0, "deviation": 0.0,
                                               "total": 55.0}
        assert "seconds" not in doc["rows"][0]
        assert {v["relation"] for v in doc["verdicts"]} == {"d", "e"}

    def test_plot(self):
        solved = solve_variant(two_trip(), VARIANT.HD, False, Settings(exact=True))
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "rotations.svg"
            assert plot_rotations(solved.graph, solved.solution.values, path) == 3
            assert path.read_text(encoding="utf-8").lstrip().startswith("<?xml")
