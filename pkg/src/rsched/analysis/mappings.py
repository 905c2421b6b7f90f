from __future__ import annotations
from collections import defaultdict
import logging

from rsched.data.rs_types import ARC_KIND, VARIANT
from rsched.errors import CutViolated, MissingPathBackref, VariantMismatch
from rsched.model.composition import CompositionGraph, cut_data
from rsched.model.hypergraph import Hypergraph

logger = logging.getLogger(__name__)


def map_HA_to_HD(g_ha: Hypergraph, y: dict, g_hd: Hypergraph) -> dict:
    """
    Replace every direct, pull and all-horizon parking arc of a direct-variant
    solution by the depot path it stands for. Trip, change and deviation arcs
    keep their value.
    """
    if not g_ha.variant.direct or not g_ha.variant.full:
        raise VariantMismatch(f"expected HA or HĀ, got {g_ha.variant.value}")
    if g_hd.variant is not VARIANT.HD:
        raise VariantMismatch(f"expected HD, got {g_hd.variant.value}")
    x = {h.id: 0 for h in g_hd.hyperarcs}
    for h in g_ha.hyperarcs:
        value = y.get(h.id, 0)
        if not value:
            continue
        if h.kind in (ARC_KIND.DIRECT, ARC_KIND.PULL_IN, ARC_KIND.PULL_OUT, ARC_KIND.PARKING):
            if not h.path:
                raise MissingPathBackref(f"{h.id} has no depot path")
            targets = h.path
        else:
            targets = (h.id,)
        for target in targets:
            if target not in x:
                raise MissingPathBackref(f"{h.id} refers to {target}, which the depot hypergraph lacks")
            x[target] += value
    return x


def map_H_to_h(g_full: Hypergraph, y: dict, g_small: Hypergraph) -> dict:
    """Sum the values of all composition-resolved copies of every small arc."""
    if not g_full.variant.full or g_small.variant.full:
        raise VariantMismatch(f"cannot project {g_full.variant.value} onto {g_small.variant.value}")
    return {h.id: sum((y.get(c, 0) for c in h.copies), 0) for h in g_small.hyperarcs}


def _complete_pulls(g_hd: Hypergraph, x: dict) -> None:
    """Pull values fill the gap between the trip arc and the changes at each event node."""
    for h in g_hd.hyperarcs:
        if h.kind is ARC_KIND.PULL_IN:
            (v, _), = h.base_arcs
            inflow = sum((x[a.id] for a in g_hd.in_arcs[v]), 0)
            kept = sum((x[a.id] for a in g_hd.out_arcs[v] if a.kind is not ARC_KIND.PULL_IN), 0)
            x[h.id] = inflow - kept
        elif h.kind is ARC_KIND.PULL_OUT:
            (_, v), = h.base_arcs
            outflow = sum((x[a.id] for a in g_hd.out_arcs[v]), 0)
            fed = sum((x[a.id] for a in g_hd.in_arcs[v] if a.kind is not ARC_KIND.PULL_OUT), 0)
            x[h.id] = outflow - fed


def extend_C_to_HD(cg: CompositionGraph, x: dict, tol: float = 0.0) -> dict:
    """
    Complete a composition-model solution to the depot hypergraph it was
    contracted from. Raises CutViolated when a depot would run below zero.
    """
    for v, cut in cut_data(cg).items():
        if cut.available(x) < -tol:
            raise CutViolated(f"depot {cut.depot} is short of {-cut.available(x)} units at {v.label}")

    g_hd = cg.source
    y = {h.id: 0 for h in g_hd.hyperarcs}
    for h in g_hd.hyperarcs:
        if h.kind in (ARC_KIND.TRIP_SERVICE, ARC_KIND.CONNECTION_CHANGE, ARC_KIND.INVENTORY_DEVIATION):
            y[h.id] = x.get(h.id, 0)
    _complete_pulls(g_hd, y)

    net: dict = defaultdict(int)
    for h in g_hd.hyperarcs:
        if h.kind is ARC_KIND.PULL_IN:
            (_, d), = h.base_arcs
            net[d] += y[h.id]
        elif h.kind is ARC_KIND.PULL_OUT:
            (d, _), = h.base_arcs
            net[d] -= y[h.id]
    for key, timeline in g_hd.timelines.items():
        level = g_hd.balances.get(timeline[0], 0)
        for i, v in enumerate(timeline[:-1]):
            level += net[v]
            if level < -tol:
                raise CutViolated(f"parking of {key} after {v.label} is {level}")
            y[f"park.{key[0]}.{key[1]}.{i}"] = level
    logger.debug("extended a composition solution to %d depot-hypergraph values", len(y))
    return y
