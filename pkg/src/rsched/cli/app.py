from __future__ import annotations
import argparse
import logging
import sys

from rsched.cli.executor import EXIT_USAGE, CommandExecutor
from rsched.config import Settings, configure_logging
from rsched.errors import ConfigError

logger = logging.getLogger(__name__)


def _instance(p: argparse.ArgumentParser) -> None:
    p.add_argument("instance", nargs="?", help="instance JSON file or built-in instance name")
    p.add_argument("--instance", dest="instance_option", metavar="INSTANCE", help="same as the positional argument")


def _merge_instance(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if not hasattr(args, "instance_option"):
        return
    given = args.instance_option
    if args.instance is not None and given is not None and args.instance != given:
        parser.error(f"two instances given: {args.instance} and {given}")
    args.instance = args.instance or given
    if args.instance is None:
        parser.error(f"{args.command} needs an instance")


def _variant(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", action="append", help="hD, hA, HD, HA, hĀ (hAbar), HĀ (HAbar) or C")


def _connections(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-connection-constraints", dest="connection_constraints", action="store_false",
                   help="drop the per-connection change constraints")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsched", description="Rolling stock scheduling models and their relations")
    parser.add_argument("--tol", type=float, help="float comparison tolerance")
    parser.add_argument("--node-limit", type=int, help="branch-and-bound node limit")
    parser.add_argument("--exact-rational", action="store_true", default=None, help="solve in rational arithmetic")
    parser.add_argument("--verbose", "-v", action="count", default=0)
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    # --json is also accepted after the subcommand and stays unset there unless given
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check an instance")
    _instance(p)

    p = sub.add_parser("build", parents=[common], help="build one model variant")
    _instance(p)
    _variant(p)
    _connections(p)
    p.add_argument("--dump", help="write the arc list to this file")

    p = sub.add_parser("solve", parents=[common], help="solve one model variant")
    _instance(p)
    _variant(p)
    _connections(p)
    p.add_argument("--export-lp", help="write the integer model as an LP file")
    p.add_argument("--plot", help="write a time-space SVG of the optimal rotations")

    p = sub.add_parser("compare", parents=[common], help="solve several variants and judge their relations")
    _instance(p)
    _variant(p)
    _connections(p)
    p.add_argument("--all", action="store_true", help="every variant")
    p.add_argument("--closure", action="store_true", help="judge a) and b) against the closed variants")
    p.add_argument("--deterministic", action="store_true", help="omit timings")
    p.add_argument("--timings", action="store_true", help="add a seconds column")

    p = sub.add_parser("project", parents=[common], help="compare integer solution sets on trip and change arcs")
    _instance(p)
    _connections(p)

    p = sub.add_parser("reduce-3sat", parents=[common], help="build the instance of a 3SAT formula")
    p.add_argument("dimacs", help="DIMACS CNF file")
    p.add_argument("--out", help="instance file to write")
    p.add_argument("--certificate", help="write the gadget map to this file")

    p = sub.add_parser("verify-reduction", parents=[common], help="check satisfiability against feasibility")
    p.add_argument("dimacs", nargs="?", help="DIMACS CNF file")
    p.add_argument("--random", nargs=2, type=int, metavar=("N", "M"), help="random formulas with N variables, M clauses")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=1)

    p = sub.add_parser("gen", parents=[common], help="generate a synthetic instance")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--lines", type=int, default=2)
    p.add_argument("--trips-per-line", type=int, default=4)
    p.add_argument("--unit-types", type=int, default=2)
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--split-fraction", type=float, default=0.0)
    p.add_argument("--stations", type=int, default=3)
    p.add_argument("--composition-drop", type=float, default=0.0)
    p.add_argument("--declare-closure", action="store_true")
    p.add_argument("--out", help="instance file to write")

    p = sub.add_parser("export-lp", parents=[common], help="write one model variant as an LP file")
    _instance(p)
    _variant(p)
    _connections(p)
    p.add_argument("--relax", action="store_true", help="continuous variables")
    p.add_argument("--out", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _merge_instance(parser, args)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    try:
        settings = Settings.from_env().with_overrides(
            tol=args.tol, node_limit=args.node_limit, exact=args.exact_rational,
        )
        level = {0: settings.log_level, 1: "INFO"}.get(args.verbose, "DEBUG")
        configure_logging(level)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    logger.debug("running %s with %s", args.command, settings)
    result = CommandExecutor(settings).run(args.command, args)
    print(result.output, end="", file=sys.stderr if result.to_stderr else sys.stdout)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
