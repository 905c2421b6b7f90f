from __future__ import annotations
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
import logging

from rsched.data.rs_types import ARC_KIND, SENSE, VARIANT
from rsched.errors import InvalidOptions, MissingCutData, UnknownDepot
from rsched.model.composition import CompositionGraph, DepotCut, cut_data
from rsched.model.hypergraph import Hypergraph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Variable:
    name: str
    lb: Fraction = Fraction(0)
    ub: Fraction | None = None
    integer: bool = False
    cost: Fraction = Fraction(0)


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: tuple[tuple[str, Fraction], ...]
    sense: SENSE
    rhs: Fraction

    def activity(self, values: dict):
        return sum((a * values.get(v, 0) for v, a in self.coeffs), 0)

    def residual(self, values: dict):
        """Amount by which the row is violated, zero when satisfied."""
        lhs = self.activity(values)
        if self.sense is SENSE.EQ:
            return abs(lhs - self.rhs)
        if self.sense is SENSE.GE:
            return max(self.rhs - lhs, 0)
        return max(lhs - self.rhs, 0)


@dataclass(frozen=True)
class ModelOptions:
    relax: bool = False
    connection_constraints: bool = True
    variant: VARIANT | None = None

    @property
    def label(self) -> str:
        name = self.variant.value if self.variant else "model"
        return f"{name}{'/LP' if self.relax else '/IP'}{'' if self.connection_constraints else '/no-iii'}"


@dataclass(frozen=True, eq=False)
class MilpModel:
    name: str
    variables: tuple[Variable, ...]
    constraints: tuple[Constraint, ...]
    arc_of: dict[str, str] = field(default_factory=dict)
    options: ModelOptions = field(default_factory=ModelOptions)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v.name: i for i, v in enumerate(self.variables)}

    def variable(self, name: str) -> Variable:
        return self.variables[self.index[name]]

    @property
    def size(self) -> tuple[int, int]:
        return len(self.variables), len(self.constraints)

    def objective(self, values: dict):
        return sum((v.cost * values.get(v.name, 0) for v in self.variables), 0)

    def violations(self, values: dict, tol: float = 0.0, check_integrality: bool = True) -> list[tuple[str, object]]:
        """Rows, bounds and integrality flags the values break by more than tol."""
        found = []
        for c in self.constraints:
            r = c.residual(values)
            if r > tol:
                found.append((c.name, r))
        for v in self.variables:
            x = values.get(v.name, 0)
            if x < v.lb - tol:
                found.append((f"lb.{v.name}", v.lb - x))
            if v.ub is not None and x > v.ub + tol:
                found.append((f"ub.{v.name}", x - v.ub))
            if check_integrality and v.integer and abs(x - round(x)) > max(tol, 0):
                found.append((f"int.{v.name}", abs(x - round(x))))
        return found

    def relaxed(self) -> MilpModel:
        return replace(self, variables=tuple(replace(v, integer=False) for v in self.variables),
                       options=replace(self.options, relax=True))

    def with_bounds(self, bounds: dict[str, tuple[Fraction, Fraction | None]]) -> MilpModel:
        variables = tuple(
            replace(v, lb=bounds[v.name][0], ub=bounds[v.name][1]) if v.name in bounds else v
            for v in self.variables
        )
        return replace(self, variables=variables)


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


def _assemble_hypergraph(g: Hypergraph, opts: ModelOptions) -> MilpModel:
    variables = tuple(
        Variable(h.id, Fraction(0), None if h.upper_bound is None else Fraction(h.upper_bound), not opts.relax,
                 _frac(h.cost))
        for h in g.hyperarcs
    )
    constraints = []
    for v in g.nodes:
        coeffs: dict[str, Fraction] = {}
        for h in g.out_arcs.get(v, ()):
            coeffs[h.id] = coeffs.get(h.id, Fraction(0)) + 1
        for h in g.in_arcs.get(v, ()):
            coeffs[h.id] = coeffs.get(h.id, Fraction(0)) - 1
        coeffs = {k: a for k, a in coeffs.items() if a != 0}
        constraints.append(Constraint(f"flow.{v.label}", tuple(coeffs.items()), SENSE.EQ,
                                      Fraction(g.balances.get(v, 0))))
    for t, ids in g.trip_index.items():
        constraints.append(Constraint(f"trip.{t}", tuple((i, Fraction(1)) for i in ids), SENSE.EQ, Fraction(1)))
    if opts.connection_constraints:
        for c, ids in g.connection_index.items():
            constraints.append(Constraint(f"conn.{c}", tuple((i, Fraction(1)) for i in ids), SENSE.EQ, Fraction(1)))

    if not g.instance.strict_end_inventory:
        totals = g.balance_totals()
        assert all(b == 0 for b in totals.values()), f"balances do not close per unit type: {totals}"
    elif any(b != 0 for b in g.balance_totals().values()):
        logger.warning("strict end inventories differ from start inventories; %s is infeasible", g.variant.value)

    return MilpModel(f"{g.instance.name or 'instance'}-{g.variant.value}", variables, tuple(constraints),
                     {h.id: h.id for h in g.hyperarcs}, opts)


def _assemble_composition(cg: CompositionGraph, opts: ModelOptions, cuts: dict | None) -> MilpModel:
    if not opts.connection_constraints:
        raise InvalidOptions("the composition model cannot drop the connection constraints")
    if cuts is None:
        try:
            cuts = cut_data(cg)
        except (KeyError, UnknownDepot) as e:
            raise MissingCutData(f"depot cut data cannot be derived: {e}") from e
    inst = cg.instance
    variables = [
        Variable(h.id, Fraction(0), Fraction(1), not opts.relax, _frac(h.cost))
        for h in cg.arcs
    ]
    variables += [
        Variable(h.id, Fraction(0), None, not opts.relax, _frac(h.cost))
        for h in cg.deviation
    ]

    constraints = []
    for v in cg.conserving_nodes():
        coeffs = [(h.id, Fraction(1)) for h in cg.out_arcs[v]] + [(h.id, Fraction(-1)) for h in cg.in_arcs[v]]
        constraints.append(Constraint(f"flow.{v.label}", tuple(coeffs), SENSE.EQ, Fraction(0)))
    for t, ids in cg.trip_index.items():
        constraints.append(Constraint(f"trip.{t}", tuple((i, Fraction(1)) for i in ids), SENSE.EQ, Fraction(1)))
    for c, ids in cg.connection_index.items():
        constraints.append(Constraint(f"conn.{c}", tuple((i, Fraction(1)) for i in ids), SENSE.EQ, Fraction(1)))

    last_cut: dict[tuple[str, str], DepotCut] = {}
    for node, cut in cuts.items():
        coeffs: dict[str, Fraction] = {}
        for h, nu in cut.pull_in:
            coeffs[h] = coeffs.get(h, Fraction(0)) + nu
        for h, nu in cut.pull_out:
            coeffs[h] = coeffs.get(h, Fraction(0)) - nu
        coeffs = {k: a for k, a in coeffs.items() if a != 0}
        constraints.append(Constraint(f"cut.{node.label}", tuple(coeffs.items()), SENSE.GE,
                                      Fraction(-cut.initial_balance)))
        last_cut[cut.depot] = cut

    deviation = {h.id for h in cg.deviation}
    for key in sorted(last_cut):
        cut = last_cut[key]
        depot = inst.require_depot(*key)
        coeffs = {}
        for h, nu in cut.pull_in:
            coeffs[h] = coeffs.get(h, Fraction(0)) + nu
        for h, nu in cut.pull_out:
            coeffs[h] = coeffs.get(h, Fraction(0)) - nu
        coeffs = {k: a for k, a in coeffs.items() if a != 0}
        surplus, deficit = f"dev+.{key[0]}.{key[1]}", f"dev-.{key[0]}.{key[1]}"
        if surplus in deviation:
            coeffs[surplus] = Fraction(-1)
            coeffs[deficit] = Fraction(1)
        constraints.append(Constraint(f"end.{key[0]}.{key[1]}", tuple(coeffs.items()), SENSE.EQ,
                                      Fraction(depot.target_end_inventory - depot.start_inventory)))

    return MilpModel(f"{inst.name or 'instance'}-C", tuple(variables), tuple(constraints),
                     {v.name: v.name for v in variables}, opts)


def assemble(g: Hypergraph | CompositionGraph, opts: ModelOptions | None = None,
             cuts: dict | None = None) -> MilpModel:
    """
    Build the MILP of a hypergraph variant or of the composition model.
    Variables are named after hyperarc ids and follow the graph's arc order.
    """
    opts = opts or ModelOptions()
    if isinstance(g, CompositionGraph):
        opts = replace(opts, variant=VARIANT.C)
        model = _assemble_composition(g, opts, cuts)
    else:
        opts = replace(opts, variant=g.variant)
        model = _assemble_hypergraph(g, opts)
    logger.info("assembled %s: %d variables, %d constraints", opts.label, *model.size)
    return model


def depot_arc_ids(g: Hypergraph) -> set[str]:
    kinds = (ARC_KIND.PULL_IN, ARC_KIND.PULL_OUT, ARC_KIND.PARKING, ARC_KIND.DIRECT, ARC_KIND.INVENTORY_DEVIATION)
    return {h.id for h in g.hyperarcs if h.kind in kinds}
