from __future__ import annotations
from dataclasses import dataclass, field
import logging

from rsched.analysis.mappings import extend_C_to_HD
from rsched.data.rs_types import VARIANT
from rsched.errors import VariantMismatch
from rsched.model.composition import contract, cut_data
from rsched.model.formulation import ModelOptions, assemble
from rsched.model.hypergraph import Hypergraph, build

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReplayResult:
    feasible: bool
    cost: object = None
    values: dict = field(default_factory=dict)
    reason: str = ""


def _chosen_compositions(g_small: Hypergraph, x: dict) -> dict[str, str]:
    chosen = {}
    for t, ids in g_small.trip_index.items():
        used = [i for i in ids if x.get(i, 0) > 0.5]
        if len(used) != 1:
            raise VariantMismatch(f"trip {t} is not served by exactly one integral trip arc")
        chosen[t] = g_small.arc(used[0]).compositions[0]
    return chosen


def replay(g_small: Hypergraph, x: dict, g_hd: Hypergraph | None = None) -> ReplayResult:
    """
    Lift an integer solution of a small variant to the depot hypergraph: keep
    its compositions and, per connection, pick the composition-resolved copy
    of the change it uses. The result is infeasible when no such copy exists
    or when a depot would run empty.
    """
    if g_small.variant.full:
        raise VariantMismatch(f"replay lifts small variants, got {g_small.variant.value}")
    g_hd = g_hd or build(g_small.instance, VARIANT.HD)
    chosen = _chosen_compositions(g_small, x)

    hd_changes = []
    for c, ids in g_small.connection_index.items():
        for arc_id in ids:
            if x.get(arc_id, 0) <= 0.5:
                continue
            fitting = [
                g for g in g_small.arc(arc_id).copies
                if all(v.composition == chosen[v.trip] for v in g_hd.arc(g).tails | g_hd.arc(g).heads)
            ]
            if not fitting:
                reason = f"{arc_id} has no composition-resolved copy between the chosen compositions"
                logger.info("replay of %s fails: %s", g_small.variant.value, reason)
                return ReplayResult(False, reason=reason)
            hd_changes.append(fitting[0])

    cg = contract(g_hd)
    rep = {member: r for r, members in cg.backrefs.items() for member in members}
    xc = {h.id: 0 for h in cg.arcs}
    for t, p in chosen.items():
        xc[f"trip.{t}.{p}"] = 1
    for g in hd_changes:
        xc[rep[g]] = 1

    inst = g_small.instance
    last_cut = {}
    for v, cut in cut_data(cg).items():
        level = cut.available(xc)
        if level < 0:
            return ReplayResult(False, reason=f"depot {cut.depot[0]}/{cut.depot[1]} runs empty at {v.label}")
        last_cut[cut.depot] = level
    for key, level in last_cut.items():
        target = inst.require_depot(*key).target_end_inventory
        if inst.strict_end_inventory:
            if level != target:
                return ReplayResult(False, reason=f"depot {key[0]}/{key[1]} ends with {level}, needs {target}")
            continue
        xc[f"dev+.{key[0]}.{key[1]}"] = max(level - target, 0)
        xc[f"dev-.{key[0]}.{key[1]}"] = max(target - level, 0)

    y = extend_C_to_HD(cg, xc)
    model = assemble(g_hd, ModelOptions())
    broken = model.violations(y)
    if broken:
        return ReplayResult(False, reason=f"lifted schedule violates {broken[0][0]}")
    return ReplayResult(True, model.objective(y), y)
