from __future__ import annotations
from collections import Counter
from dataclasses import dataclass
from itertools import product
import logging

from rsched.data.instance import Connection, Instance
from rsched.data.rs_types import CONNECTION_KIND, SIDE

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Move:
    """One unit continuing from a predecessor position to a successor position."""
    pred_trip: str
    pred_composition: str
    pred_position: int
    succ_trip: str
    succ_composition: str
    succ_position: int
    unit_type: str


@dataclass(frozen=True)
class Change:
    id: str
    connection: str
    kind: CONNECTION_KIND
    tails: tuple[tuple[str, str], ...]  # (trip, composition) on the predecessor side
    heads: tuple[tuple[str, str], ...]  # (trip, composition) on the successor side
    moves: tuple[Move, ...]
    uncoupled: tuple[tuple[int, str], ...] = ()  # (position in uncouple_trip, unit type) left at its arrival
    coupled: tuple[tuple[int, str], ...] = ()  # (position in couple_trip, unit type) added at its departure
    actions: int = 0
    depot_actions: int = 0
    uncouple_trip: str | None = None
    couple_trip: str | None = None

    @property
    def nu_in(self) -> dict[str, int]:
        return dict(Counter(r for _, r in self.uncoupled))

    @property
    def nu_out(self) -> dict[str, int]:
        return dict(Counter(r for _, r in self.coupled))

    @property
    def pred_trip(self) -> str:
        return self.tails[0][0]

    @property
    def succ_trip(self) -> str:
        return self.heads[0][0]


def kept_length(pred_units: tuple[str, ...], succ_units: tuple[str, ...], uncouple_side: SIDE,
                couple_side: SIDE, allow_replacement: bool = True) -> int | None:
    """
    Length of the longest block that can stay in the train when the predecessor
    composition turns into the successor composition, or None if there is none.
    Units leave at `uncouple_side` and join at `couple_side`.
    """
    for k in range(min(len(pred_units), len(succ_units)), 0, -1):
        kept_pred = pred_units[:k] if uncouple_side is SIDE.REAR else pred_units[len(pred_units) - k:]
        kept_succ = succ_units[:k] if couple_side is SIDE.REAR else succ_units[len(succ_units) - k:]
        if kept_pred != kept_succ:
            continue
        if not allow_replacement and len(pred_units) > k and len(succ_units) > k:
            continue
        return k
    return None


def _kept_positions(size: int, k: int, side: SIDE) -> list[int]:
    return list(range(1, k + 1)) if side is SIDE.REAR else list(range(size - k + 1, size + 1))


def _one_to_one(instance: Instance, c: Connection) -> list[Change]:
    pred = instance.trip(c.predecessors[0])
    succ = instance.trip(c.successors[0])
    whitelist = set(c.allowed_changes) if c.allowed_changes is not None else None
    found = []
    for p_id, q_id in product(pred.allowed_compositions, succ.allowed_compositions):
        if whitelist is not None and (p_id, q_id) not in whitelist:
            continue
        p, q = instance.composition(p_id).units, instance.composition(q_id).units
        k = kept_length(p, q, instance.uncouple_side, instance.couple_side, instance.allow_replacement)
        if k is None:
            continue
        kept_p = _kept_positions(len(p), k, instance.uncouple_side)
        kept_q = _kept_positions(len(q), k, instance.couple_side)
        moves = tuple(
            Move(pred.id, p_id, i, succ.id, q_id, j, p[i - 1])
            for i, j in zip(kept_p, kept_q)
        )
        uncoupled = tuple((i, p[i - 1]) for i in range(1, len(p) + 1) if i not in kept_p)
        coupled = tuple((j, q[j - 1]) for j in range(1, len(q) + 1) if j not in kept_q)
        actions = int(bool(uncoupled)) + int(bool(coupled))
        found.append(Change(
            id=f"chg.{c.id}.{p_id}~{q_id}",
            connection=c.id,
            kind=c.kind,
            tails=((pred.id, p_id),),
            heads=((succ.id, q_id),),
            moves=moves,
            uncoupled=uncoupled,
            coupled=coupled,
            actions=actions,
            depot_actions=actions,
            uncouple_trip=pred.id if uncoupled else None,
            couple_trip=succ.id if coupled else None,
        ))
    return found


def _block(units: tuple[str, ...], k: int, side: SIDE) -> tuple[str, ...]:
    """The k units that stay when the others leave or join at `side`."""
    return units[:k] if side is SIDE.REAR else units[len(units) - k:]


def _owner(position: int, sizes: tuple[int, int]) -> tuple[int, int]:
    """(part, position within the part) of a position in two concatenated compositions."""
    return (0, position) if position <= sizes[0] else (1, position - sizes[0])


def _splice(single: tuple[str, ...], pair: tuple[str, ...], sizes: tuple[int, int], surplus_side: SIDE,
            missing_side: SIDE) -> tuple[list[tuple[int, int]], list[int], list[int]] | None:
    """
    Match a single composition against a pair of concatenated ones. Returns
    kept (single position, pair position) links, surplus positions of the
    single composition and missing positions of the pair, or None when the
    compositions do not fit. Missing units come from one part only and each
    part keeps at least one linked unit.
    """
    if len(single) >= len(pair):
        if _block(single, len(pair), surplus_side) != pair:
            return None
        kept = _kept_positions(len(single), len(pair), surplus_side)
        links = list(zip(kept, range(1, len(pair) + 1)))
        return links, [i for i in range(1, len(single) + 1) if i not in kept], []
    if _block(pair, len(single), missing_side) != single:
        return None
    kept = _kept_positions(len(pair), len(single), missing_side)
    missing = [j for j in range(1, len(pair) + 1) if j not in kept]
    if len({_owner(j, sizes)[0] for j in kept}) < 2 or len({_owner(j, sizes)[0] for j in missing}) > 1:
        return None
    return list(zip(range(1, len(single) + 1), kept)), [], missing


def _split(instance: Instance, c: Connection) -> list[Change]:
    pred = instance.trip(c.predecessors[0])
    parts = tuple(instance.trip(s) for s in c.successors)
    found = []
    for p_id, q1_id, q2_id in product(pred.allowed_compositions, parts[0].allowed_compositions,
                                      parts[1].allowed_compositions):
        p = instance.composition(p_id).units
        q1, q2 = instance.composition(q1_id).units, instance.composition(q2_id).units
        sizes, heads = (len(q1), len(q2)), (q1_id, q2_id)
        spliced = _splice(p, q1 + q2, sizes, instance.uncouple_side, instance.couple_side)
        if spliced is None:
            continue
        links, surplus, missing = spliced
        moves = []
        for i, j in links:
            part, local = _owner(j, sizes)
            moves.append(Move(pred.id, p_id, i, parts[part].id, heads[part], local, p[i - 1]))
        coupled = [(_owner(j, sizes), (q1 + q2)[j - 1]) for j in missing]
        depot_actions = int(bool(surplus)) + int(bool(missing))
        found.append(Change(
            id=f"chg.{c.id}.{p_id}~{q1_id}&{q2_id}",
            connection=c.id,
            kind=c.kind,
            tails=((pred.id, p_id),),
            heads=((parts[0].id, q1_id), (parts[1].id, q2_id)),
            moves=tuple(moves),
            uncoupled=tuple((i, p[i - 1]) for i in surplus),
            coupled=tuple((local, r) for (_, local), r in coupled),
            actions=1 + depot_actions,
            depot_actions=depot_actions,
            uncouple_trip=pred.id if surplus else None,
            couple_trip=parts[coupled[0][0][0]].id if coupled else None,
        ))
    return found


def _join(instance: Instance, c: Connection) -> list[Change]:
    parts = tuple(instance.trip(t) for t in c.predecessors)
    succ = instance.trip(c.successors[0])
    found = []
    for p1_id, p2_id, q_id in product(parts[0].allowed_compositions, parts[1].allowed_compositions,
                                      succ.allowed_compositions):
        p1, p2 = instance.composition(p1_id).units, instance.composition(p2_id).units
        q = instance.composition(q_id).units
        sizes, tails = (len(p1), len(p2)), (p1_id, p2_id)
        spliced = _splice(q, p1 + p2, sizes, instance.couple_side, instance.uncouple_side)
        if spliced is None:
            continue
        links, surplus, missing = spliced
        moves = []
        for j, i in links:
            part, local = _owner(i, sizes)
            moves.append(Move(parts[part].id, tails[part], local, succ.id, q_id, j, q[j - 1]))
        uncoupled = [(_owner(i, sizes), (p1 + p2)[i - 1]) for i in missing]
        depot_actions = int(bool(surplus)) + int(bool(missing))
        found.append(Change(
            id=f"chg.{c.id}.{p1_id}&{p2_id}~{q_id}",
            connection=c.id,
            kind=c.kind,
            tails=((parts[0].id, p1_id), (parts[1].id, p2_id)),
            heads=((succ.id, q_id),),
            moves=tuple(moves),
            uncoupled=tuple((local, r) for (_, local), r in uncoupled),
            coupled=tuple((j, q[j - 1]) for j in surplus),
            actions=1 + depot_actions,
            depot_actions=depot_actions,
            uncouple_trip=parts[uncoupled[0][0][0]].id if uncoupled else None,
            couple_trip=succ.id if surplus else None,
        ))
    return found


def enumerate_changes(instance: Instance, connection: Connection) -> list[Change]:
    """
    Every composition change a connection admits, one per composition tuple,
    in the order of the trips' allowed composition lists.
    """
    if connection.kind is CONNECTION_KIND.ONE_TO_ONE:
        found = _one_to_one(instance, connection)
    elif connection.kind is CONNECTION_KIND.ONE_TO_TWO:
        found = _split(instance, connection)
    else:
        found = _join(instance, connection)
    if instance.allow_replacement and any(ch.uncoupled and ch.coupled for ch in found):
        logger.info("connection %s admits changes that uncouple and couple at once", connection.id)
    return found
