from __future__ import annotations
from fractions import Fraction
import json
import logging
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from rsched.analysis.compare import ComparisonReport  # noqa: E402
from rsched.data.rs_types import EVENT_SIDE, NODE_KIND  # noqa: E402
from rsched.model.flow import decompose_paths  # noqa: E402
from rsched.model.hypergraph import Hypergraph, Node  # noqa: E402

logger = logging.getLogger(__name__)

COLUMNS = ("variant", "vars", "cons", "LP", "IP", "gap", "comp", "coup", "dev", "nodes", "status", "flags")


def fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, Fraction) and value.denominator == 1:
        return str(value.numerator)
    if isinstance(value, (Fraction, float)):
        return f"{float(value):.6g}"
    return str(value)


def plain(value):
    """JSON-friendly number: ints stay ints, everything else becomes a float."""
    if value is None:
        return None
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else float(value)
    return value


def _cells(report: ComparisonReport, include_timings: bool) -> list[list[str]]:
    rows = []
    for r in report.rows:
        b = r.breakdown
        cells = [r.variant.value, str(r.variables), str(r.constraints), fmt(r.lp), fmt(r.ip), fmt(r.gap),
                 fmt(b.composition_cost if b else None), fmt(b.coupling_cost if b else None),
                 fmt(b.deviation_cost if b else None), str(r.nodes), r.status,
                 "; ".join(r.flags + ([r.error] if r.error else []))]
        if include_timings:
            cells.append(f"{r.seconds:.3f}")
        rows.append(cells)
    return rows


def render_text(report: ComparisonReport, include_timings: bool = False) -> str:
    header = list(COLUMNS) + (["seconds"] if include_timings else [])
    rows = [header, *_cells(report, include_timings)]
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = [f"instance {report.instance or '-'}"]
    lines += ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    if report.verdicts:
        lines.append("")
        lines += [str(v) for v in report.verdicts]
    return "\n".join(lines) + "\n"


def report_to_dict(report: ComparisonReport, include_timings: bool = False) -> dict:
    rows = []
    for r in report.rows:
        row = {
            "variant": r.variant.value, "variables": r.variables, "constraints": r.constraints,
            "lp": plain(r.lp), "ip": plain(r.ip), "bound": plain(r.bound), "gap": plain(r.gap),
            "nodes": r.nodes, "status": r.status, "flags": list(r.flags),
            "breakdown": r.breakdown.as_dict() if r.breakdown else None,
        }
        if r.error:
            row["error"] = r.error
        if include_timings:
            row["seconds"] = r.seconds
        rows.append(row)
    return {
        "instance": report.instance,
        "connection_constraints": report.options.connection_constraints,
        "closure": report.options.closure,
        "rows": rows,
        "verdicts": [
            {"relation": v.relation, "mode": v.mode, "lhs_variant": v.lhs_variant.value,
             "rhs_variant": v.rhs_variant.value, "lhs": plain(v.lhs), "rhs": plain(v.rhs),
             "verdict": v.verdict.value}
            for v in report.verdicts
        ],
    }


def dumps_report(report: ComparisonReport, include_timings: bool = False) -> str:
    return json.dumps(report_to_dict(report, include_timings), indent=2, ensure_ascii=False) + "\n"


def _place(g: Hypergraph, v: Node) -> tuple[int, str] | None:
    if v.kind is NODE_KIND.DEPOT_TIMELINE:
        return v.time, v.station
    if v.kind is NODE_KIND.EVENT:
        trip = g.instance.trip(v.trip)
        return v.time, trip.dep_station if v.side is EVENT_SIDE.DEP else trip.arr_station
    return None


def plot_rotations(g: Hypergraph, values: dict, path: str | Path) -> int:
    """
    Time-space diagram of the unit paths of an integer solution, one line per
    unit, coloured by unit type. Returns the number of units drawn.
    """
    decomposition = decompose_paths(g, values)
    stations = g.instance.stations
    level = {s: i for i, s in enumerate(stations)}
    colours = {u.id: f"C{i}" for i, u in enumerate(g.instance.unit_types)}

    fig, ax = plt.subplots(figsize=(10, 1.5 + 0.8 * len(stations)))
    drawn = 0
    for i, unit in enumerate(decomposition.paths):
        points = [p for p in (_place(g, v) for v in unit.nodes) if p is not None]
        if len(points) < 2:
            continue
        offset = 0.04 * (i % 5)
        ax.plot([t for t, _ in points], [level[s] + offset for _, s in points],
                color=colours.get(unit.unit_type, "k"), linewidth=1.5, alpha=0.8)
        drawn += 1
    ax.set_yticks(range(len(stations)), stations)
    ax.set_xlabel("time [min]")
    ax.set_title(f"{g.instance.name or 'instance'} {g.variant.value}: {drawn} units")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    logger.info("plotted %d unit paths to %s", drawn, path)
    return drawn
