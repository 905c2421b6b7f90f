from __future__ import annotations
from pathlib import Path

from rsched.load.lp_writer import format_number
from rsched.model.composition import CompositionGraph
from rsched.model.hypergraph import Hyperarc, Hypergraph


def _tags(h: Hyperarc) -> str:
    tags = []
    if h.trip:
        tags.append(f"trip={h.trip}")
    if h.connection:
        tags.append(f"conn={h.connection}")
    if h.compositions:
        tags.append(f"comp={'/'.join(h.compositions)}")
    if h.depot:
        tags.append(f"depot={h.depot[0]}/{h.depot[1]}")
    if len(h.copies) > 1:
        tags.append(f"copies={len(h.copies)}")
    return " ".join(tags) or "-"


def format_arc(h: Hyperarc) -> str:
    """`id kind cost ub tail>head[,tail>head...] tags`, ub is `inf` for unbounded arcs."""
    ub = "inf" if h.upper_bound is None else str(h.upper_bound)
    base = ",".join(f"{a.label}>{b.label}" for a, b in h.base_arcs)
    return f"{h.id} {h.kind.value} {format_number(h.cost)} {ub} {base} {_tags(h)}"


def format_graph(g: Hypergraph | CompositionGraph) -> str:
    if isinstance(g, CompositionGraph):
        header = f"# C {g.instance.name} nodes={len(g.nodes)} arcs={len(g.arcs)}"
        arcs = list(g.arcs)
    else:
        header = f"# {g.variant.value} {g.instance.name} nodes={len(g.nodes)} arcs={len(g.hyperarcs)}"
        arcs = list(g.hyperarcs)
    return "\n".join([header, *(format_arc(h) for h in arcs)]) + "\n"


def write_graph(g: Hypergraph | CompositionGraph, path: str | Path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8")
