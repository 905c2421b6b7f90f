import io
import json
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from rsched.cli.app import build_parser, main


class AppTestCase(unittest.TestCase):
    def run_main(self, *argv: str) -> tuple[int, str, str]:
        with patch("sys.stdout", new_callable=io.StringIO) as out, \
                patch("sys.stderr", new_callable=io.StringIO) as err:
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def test_parser_defaults(self):
        args = build_parser().parse_args(["compare", "TwoTrip"])
        assert args.connection_constraints is True
        assert args.variant is None and not args.all
        args = build_parser().parse_args(["build", "TwoTrip", "--no-connection-constraints", "--variant", "hD"])
        assert args.connection_constraints is False
        assert args.variant == ["hD"]

    def test_validate(self):
        assert self.run_main("validate", "TwoTrip") == (0, "valid\n", "")

    def test_unknown_instance(self):
        code, out, err = self.run_main("validate", "NoSuchInstance")
        assert code == 2
        assert out == ""
        assert err.startswith("error: ")

    def test_usage_errors(self):
        assert self.run_main("solve")[0] == 2
        assert self.run_main("solve", "TwoTrip", "--variant", "HX")[0] == 2

    def test_build(self):
        code, out, _ = self.run_main("build", "TwoTrip", "--variant", "C")
        assert code == 0
        assert out.startswith("variant=C nodes=12 arcs=11 ")

    def test_solve(self):
        code, out, _ = self.run_main("--json", "solve", "TwoTrip", "--variant", "HD")
        doc = json.loads(out)
        assert code == 0
        assert doc["ip"] == 55
        assert doc["breakdown"]["coupling"] == 10.0

    def test_solve_at_node_limit(self):
        code, out, _ = self.run_main("--node-limit", "0", "--json", "solve", "TwoTrip", "--variant", "HD")
        assert code == 1
        assert json.loads(out)["status"] == "NodeLimit"

    def test_compare(self):
        code, out, _ = self.run_main("--exact-rational", "compare", "TwoTrip", "--variant", "HD", "--variant", "C",
                                     "--deterministic")
        assert code == 0
        assert "e) IP HD=55 C=55: EqualityHolds" in out.splitlines()

    def test_project(self):
        code, out, _ = self.run_main("project", "TwoTrip")
        assert code == 0
        assert out.startswith("equal True\n")

    def test_gen_then_validate(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "gen.json"
            assert self.run_main("gen", "--seed", "4", "--out", str(path))[0] == 0
            assert self.run_main("validate", str(path))[0] == 0

    def test_reduce_and_verify(self):
        with tempfile.TemporaryDirectory() as tmp:
            cnf = Path(tmp) / "f.cnf"
            cnf.write_text("p cnf 1 1\n1 1 1 0\n", encoding="utf-8")
            out_path, cert = Path(tmp) / "f.json", Path(tmp) / "cert.json"
            code, out, _ = self.run_main("reduce-3sat", str(cnf), "--out", str(out_path), "--certificate", str(cert))
            assert code == 0
            assert out == f"8 trips written to {out_path}\n"
            assert json.loads(cert.read_text(encoding="utf-8"))["literals"]["1"][0] == "x1s"
            assert self.run_main("verify-reduction", str(cnf)) == (0, "Agree(sat=True, feasible=True)\n", "")

    def test_verify_needs_input(self):
        assert self.run_main("verify-reduction")[0] == 2

    def test_export_lp(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "c.lp"
            code, out, _ = self.run_main("export-lp", "TwoTrip", "--variant", "C", "--out", str(path))
            assert code == 0
            assert out.startswith("TwoTrip-C: ")
            assert path.read_text(encoding="utf-8").startswith("\\ Problem name: TwoTrip-C\n")

    def test_instance_option(self):
        assert self.run_main("validate", "--instance", "TwoTrip") == (0, "valid\n", "")
        code, out, _ = self.run_main("--json", "solve", "--instance", "TwoTrip", "--variant", "C")
        assert code == 0
        assert json.loads(out)["ip"] == 55
        code, _, _ = self.run_main("compare", "--instance", "TwoTrip", "--all", "--closure", "--deterministic")
        assert code == 0

    def test_conflicting_or_missing_instance(self):
        assert self.run_main("validate", "TwoTrip", "--instance", "Situation2")[0] == 2
        assert self.run_main("solve", "--variant", "HD")[0] == 2

    def test_json_after_subcommand(self):
        code, out, _ = self.run_main("solve", "TwoTrip", "--variant", "HD", "--json")
        assert code == 0
        assert json.loads(out)["ip"] == 55
        args = build_parser().parse_args(["validate", "TwoTrip"])
        assert args.json is False

    def test_undecodable_instance_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "bad.json"
            path.write_bytes(b"\xff\xfe{}")
            code, out, err = self.run_main("validate", str(path))
        assert code == 1
        assert out == ""
        assert err.startswith("error: InstanceFormatError: ")
