from __future__ import annotations
from abc import ABC, abstractmethod
import argparse
from dataclasses import dataclass
import json
import logging
from pathlib import Path

from rsched.analysis.compare import ALL_VARIANTS, CompareOptions, compare
from rsched.analysis.costs import cost_breakdown
from rsched.analysis.mappings import extend_C_to_HD
from rsched.analysis.theorem import verify_corollary_projection
from rsched.analysis.variants import graph_for, solve_variant
from rsched.config import Settings
from rsched.data.instance import Instance, validate
from rsched.data.rs_types import SOLVE_STATUS, VARIANT, VERDICT
from rsched.errors import NodeLimitReached, UsageError
from rsched.extract.dimacs_reader import read_dimacs
from rsched.extract.instance_reader import InstanceFactory
from rsched.gen.generator import GenConfig, generate
from rsched.load.graph_dump import format_graph
from rsched.load.instance_writer import dumps_instance
from rsched.load.lp_writer import write_lp
from rsched.load.report_writer import dumps_report, fmt, plain, plot_rotations, render_text
from rsched.manifest.catalog import InstanceCatalog
from rsched.model.composition import CompositionGraph
from rsched.model.formulation import ModelOptions, assemble
from rsched.reduction.sat3 import random_3sat, reduce_3sat, verify_reduction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    output: str
    to_stderr: bool = False


def load_instance(ref: str) -> Instance:
    """A path to an instance JSON file, or the name of a built-in instance."""
    path = Path(ref)
    if path.is_file():
        return InstanceFactory.from_file(path)
    catalog = InstanceCatalog()
    if ref in catalog.names:
        return catalog.get(ref)
    raise UsageError(f"{ref!r} is neither an instance file nor one of {', '.join(catalog.names)}")


def parse_variants(names: list[str] | None, every: bool) -> tuple[VARIANT, ...]:
    if every or not names:
        return ALL_VARIANTS
    try:
        return tuple(VARIANT.parse(n) for n in names)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


class Command(ABC):
    """
    Command interface
    """
    @abstractmethod
    def execute(self) -> CommandResult:
        pass

    @abstractmethod
    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        pass


class ValidateCommand(Command):
    """Lists the axiom violations of an instance; any violation exits with 1."""
    def __init__(self) -> None:
        self.__args = None

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args

    def execute(self) -> CommandResult:
        found = validate(load_instance(self.__args.instance))
        if self.__args.json:
            out = _json({"violations": [{"kind": v.kind, "entity": v.entity, "message": v.message} for v in found]})
        else:
            out = "".join(f"{v}: {v.message}\n" for v in found) or "valid\n"
        return CommandResult(1 if found else 0, out)


class BuildCommand(Command):
    """Builds one variant and prints its size, or its full arc dump with --dump."""
    def __init__(self) -> None:
        self.__args = None

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args

    def execute(self) -> CommandResult:
        args = self.__args
        instance = load_instance(args.instance)
        variant = parse_variants(args.variant, False)[0]
        g = graph_for(instance, variant)
        model = assemble(g, ModelOptions(connection_constraints=args.connection_constraints or variant is VARIANT.C))
        if args.dump:
            Path(args.dump).write_text(format_graph(g), encoding="utf-8")
        arcs = len(g.arcs) if isinstance(g, CompositionGraph) else len(g.hyperarcs)
        doc = {"variant": variant.value, "nodes": len(g.nodes), "arcs": arcs, "variables": model.size[0],
               "constraints": model.size[1]}
        out = _json(doc) if args.json else " ".join(f"{k}={v}" for k, v in doc.items()) + "\n"
        return CommandResult(0, out)


class SolveCommand(Command):
    """Solves one variant as LP and IP and prints both values with the cost split of the IP optimum."""
    def __init__(self) -> None:
        self.__args = None
        self.__settings = Settings()

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args
        self.__settings = settings

    def execute(self) -> CommandResult:
        args, settings = self.__args, self.__settings
        instance = load_instance(args.instance)
        variant = parse_variants(args.variant, False)[0]
        keep = args.connection_constraints or variant is VARIANT.C
        g = graph_for(instance, variant)
        lp = solve_variant(instance, variant, True, settings, keep, graph=g)
        doc = {"variant": variant.value, "lp": plain(lp.solution.objective), "status": lp.solution.status.value}
        code = 0
        try:
            ip = solve_variant(instance, variant, False, settings, keep, graph=g)
        except NodeLimitReached as e:
            doc.update(status=SOLVE_STATUS.NODE_LIMIT.value, ip=plain(e.incumbent), bound=plain(e.bound))
            return CommandResult(1, _json(doc) if args.json else _lines(doc))
        doc.update(status=ip.solution.status.value, ip=plain(ip.solution.objective), nodes=ip.solution.nodes)
        if args.export_lp:
            write_lp(ip.model, args.export_lp)
        if ip.solution.optimal:
            doc["breakdown"] = cost_breakdown(instance, ip).as_dict()
            if args.plot:
                if isinstance(g, CompositionGraph):
                    plot_rotations(g.source, extend_C_to_HD(g, ip.solution.values), args.plot)
                else:
                    plot_rotations(g, ip.solution.values, args.plot)
        else:
            code = 1
        return CommandResult(code, _json(doc) if args.json else _lines(doc))


def _lines(doc: dict) -> str:
    out = []
    for k, v in doc.items():
        if isinstance(v, dict):
            out += [f"{k}.{name} {fmt(value)}" for name, value in v.items()]
        else:
            out.append(f"{k} {fmt(v)}")
    return "\n".join(out) + "\n"


class CompareCommand(Command):
    """Tabulates the requested variants; a failed relation exits with 1."""
    def __init__(self) -> None:
        self.__args = None
        self.__settings = Settings()

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args
        self.__settings = settings

    def execute(self) -> CommandResult:
        args = self.__args
        options = CompareOptions(
            variants=parse_variants(args.variant, args.all),
            connection_constraints=args.connection_constraints,
            closure=args.closure,
            deterministic=args.deterministic,
        )
        report = compare(load_instance(args.instance), options, self.__settings)
        failed = any(v.verdict is VERDICT.VIOLATION for v in report.verdicts)
        timings = not args.deterministic
        if args.json:
            out = dumps_report(report, include_timings=timings and args.timings)
        else:
            out = render_text(report, include_timings=timings and args.timings)
        return CommandResult(1 if failed else 0, out)


class ProjectCommand(Command):
    """Compares the integer solution sets of HĀ, HD and C projected onto trip and change arcs."""
    def __init__(self) -> None:
        self.__args = None
        self.__settings = Settings()

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args
        self.__settings = settings

    def execute(self) -> CommandResult:
        args = self.__args
        report = verify_corollary_projection(load_instance(args.instance), args.connection_constraints,
                                             self.__settings)
        doc = {"equal": report.equal, "HĀ": len(report.ha_closure), "HD": len(report.hd), "C": len(report.c),
               "HD_only": sorted(sorted(s) for s in report.hd_extra)}
        out = _json(doc) if args.json else (
            f"equal {report.equal}\nHĀ {len(report.ha_closure)} HD {len(report.hd)} C {len(report.c)}\n"
        )
        return CommandResult(0 if report.equal else 1, out)


class Reduce3SatCommand(Command):
    """Writes the instance of a DIMACS formula and, with --certificate, its gadget map."""
    def __init__(self) -> None:
        self.__args = None

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args

    def execute(self) -> CommandResult:
        args = self.__args
        instance, certificate = reduce_3sat(read_dimacs(args.dimacs))
        text = dumps_instance(instance)
        if args.certificate:
            Path(args.certificate).write_text(_json({
                "clauses": {str(k): list(v) for k, v in certificate.clause_trips.items()},
                "literals": {str(j): list(v) for j, v in certificate.literal_trips.items()},
            }), encoding="utf-8")
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            return CommandResult(0, f"{len(instance.trips)} trips written to {args.out}\n")
        return CommandResult(0, text)


class VerifyReductionCommand(Command):
    """Checks satisfiability against feasibility of the reduced instance; disagreement exits with 1."""
    def __init__(self) -> None:
        self.__args = None
        self.__settings = Settings()

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args
        self.__settings = settings

    def execute(self) -> CommandResult:
        args = self.__args
        if args.dimacs:
            formulas = [read_dimacs(args.dimacs)]
        elif args.random:
            n, m = args.random
            formulas = [random_3sat(n, m, args.seed + i) for i in range(args.count)]
        else:
            raise UsageError("verify-reduction needs a DIMACS file or --random N M")
        verdicts = [verify_reduction(f, self.__settings) for f in formulas]
        code = 0 if all(v.agree for v in verdicts) else 1
        if args.json:
            return CommandResult(code, _json({"verdicts": [
                {"agree": v.agree, "satisfiable": v.satisfiable, "feasible": v.feasible,
                 "assignment": {str(j): x for j, x in v.assignment.items()}}
                for v in verdicts
            ]}))
        return CommandResult(code, "".join(f"{v}\n" for v in verdicts))


class GenCommand(Command):
    """Generates a synthetic instance."""
    def __init__(self) -> None:
        self.__args = None

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args

    def execute(self) -> CommandResult:
        args = self.__args
        cfg = GenConfig(seed=args.seed, lines=args.lines, trips_per_line=args.trips_per_line,
                        unit_types=args.unit_types, n_max=args.n_max, split_fraction=args.split_fraction,
                        station_count=args.stations, composition_drop=args.composition_drop,
                        declare_closure=args.declare_closure)
        text = dumps_instance(generate(cfg))
        if args.out:
            Path(args.out).write_text(text, encoding="utf-8")
            return CommandResult(0, f"written to {args.out}\n")
        return CommandResult(0, text)


class ExportLpCommand(Command):
    """Writes the model of one variant as an LP file."""
    def __init__(self) -> None:
        self.__args = None

    def set_command(self, args: argparse.Namespace, settings: Settings) -> None:
        self.__args = args

    def execute(self) -> CommandResult:
        args = self.__args
        variant = parse_variants(args.variant, False)[0]
        g = graph_for(load_instance(args.instance), variant)
        keep = args.connection_constraints or variant is VARIANT.C
        model = assemble(g, ModelOptions(relax=args.relax, connection_constraints=keep))
        write_lp(model, args.out)
        return CommandResult(0, f"{model.name}: {model.size[0]} variables, {model.size[1]} constraints\n")
