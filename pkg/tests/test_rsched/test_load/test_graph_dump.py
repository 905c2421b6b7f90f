import tempfile
import unittest
from pathlib import Path

from rsched.data.rs_types import VARIANT
from rsched.load.graph_dump import format_arc, format_graph, write_graph
from rsched.manifest.catalog import two_trip
from rsched.model.composition import contract
from rsched.model.hypergraph import build


class GraphDumpTestCase(unittest.TestCase):
    def setUp(self) -> None:
        self.hd = build(two_trip(), VARIANT.HD)

    def test_arc_lines(self):
        line = format_arc(self.hd.arc("trip.t1.rr"))
        assert line.startswith("trip.t1.rr TripService 30 1 ")
        assert line.endswith("trip=t1 comp=rr")
        assert format_arc(self.hd.arc("park.A.r.0")).split()[3] == "inf"

    def test_header(self):
        text = format_graph(self.hd)
        assert text.splitlines()[0] == f"# HD TwoTrip nodes={len(self.hd.nodes)} arcs={len(self.hd.hyperarcs)}"
        assert len(text.splitlines()) == len(self.hd.hyperarcs) + 1
        assert format_graph(contract(self.hd)).startswith("# C TwoTrip nodes=12 arcs=11")

    def test_write(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "hd.txt"
            write_graph(self.hd, path)
            assert path.read_text(encoding="utf-8") == format_graph(self.hd)
