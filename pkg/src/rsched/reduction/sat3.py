from __future__ import annotations
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import logging

import numpy as np

from rsched.config import Settings
from rsched.data.instance import Composition, Connection, CostParams, Depot, Instance, Trip, UnitType
from rsched.data.rs_types import CONNECTION_KIND, SOLVE_STATUS, VARIANT
from rsched.analysis.variants import solve_variant

logger = logging.getLogger(__name__)

SLOT = 100
UNIT = UnitType("u", length_units=1, seats=0)
SINGLE, DOUBLE, TRUE, FALSE = "S", "D", "T", "F"
HOME, SHARED = "B", "A"


@dataclass(frozen=True)
class Cnf3:
    """Three literals per clause; literal j > 0 stands for x_j, -j for its negation."""
    n_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if self.n_vars < 1:
            raise ValueError("a formula needs at least one variable")
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"clause {c} does not have exactly three literals")
            if any(lit == 0 or abs(lit) > self.n_vars for lit in c):
                raise ValueError(f"clause {c} names a variable outside 1..{self.n_vars}")

    def satisfied_by(self, assignment: dict[int, bool]) -> bool:
        return all(any(assignment[abs(lit)] == (lit > 0) for lit in c) for c in self.clauses)


def brute_force_sat(f: Cnf3) -> dict[int, bool] | None:
    for values in product((False, True), repeat=f.n_vars):
        assignment = dict(enumerate(values, start=1))
        if f.satisfied_by(assignment):
            return assignment
    return None


def random_3sat(n_vars: int, n_clauses: int, seed: int, planted: bool = False) -> Cnf3:
    """
    Uniform random clauses over distinct variables where possible. A planted
    formula keeps only clauses that a hidden random assignment satisfies.
    """
    rng = np.random.default_rng(seed)
    hidden = {j: bool(rng.integers(2)) for j in range(1, n_vars + 1)}
    clauses = []
    while len(clauses) < n_clauses:
        picks = rng.choice(np.arange(1, n_vars + 1), size=3, replace=n_vars < 3)
        signs = rng.integers(2, size=3)
        clause = tuple(int(v) if s else -int(v) for v, s in zip(picks, signs))
        if planted and not any(hidden[abs(lit)] == (lit > 0) for lit in clause):
            continue
        clauses.append(clause)
    return Cnf3(n_vars, tuple(clauses))


@dataclass(frozen=True)
class ReductionCertificate:
    """Trip ids of every gadget; clause k -> (start, true, negated, end), variable j -> its chain."""
    clause_trips: dict[int, tuple[str, str, str, str]]
    literal_trips: dict[int, tuple[str, ...]]

    def decode(self, values: dict) -> dict[int, bool]:
        """x_j is true when its chain starts with the true double composition."""
        return {j: values.get(f"trip.{trips[0]}.{TRUE}", 0) > 0.5 for j, trips in self.literal_trips.items()}


def _trip(trip_id: str, origin: str, destination: str, dep: int, allowed: list[str]) -> Trip:
    return Trip(trip_id, origin, destination, dep, dep + 10, Fraction(0), 0, tuple(allowed))


def _connection(c_id: str, pred: Trip, succ: Trip, allowed: list[tuple[str, str]]) -> Connection:
    """Whitelisted changes, restricted to the compositions both trips offer."""
    offered = tuple((p, q) for p, q in allowed if p in pred.allowed_compositions and q in succ.allowed_compositions)
    return Connection(c_id, CONNECTION_KIND.ONE_TO_ONE, (pred.id,), (succ.id,), offered)


def _occurrences(f: Cnf3) -> dict[int, list[int]]:
    """Clauses (1-based, ascending) in which each variable appears."""
    return {j: [k for k, clause in enumerate(f.clauses, start=1) if any(abs(lit) == j for lit in clause)]
            for j in range(1, f.n_vars + 1)}


def reduce_3sat(f: Cnf3) -> tuple[Instance, ReductionCertificate]:
    """
    Build a single-unit-type instance that is feasible exactly when f is
    satisfiable. Clause k runs single from HOME to A, then A -> Q{k} -> A,
    where exactly one of the two middle trips runs double. The second unit
    comes from a literal train of that clause: a true train leaves a unit at
    A and takes one back at Q{k}; a false train leaves a unit at Q{k} and
    takes one back at A. Q{k} starts and ends empty, so every unit a clause
    drops or takes there is matched by a literal of that clause.
    """
    m, n = len(f.clauses), f.n_vars
    trips: list[Trip] = []
    connections: list[Connection] = []
    depots = [Depot(SHARED, "u", 0, 0), Depot(HOME, "u", 2 * n + 1, 2 * n + 1)]
    clause_trips = {}
    for k, clause in enumerate(f.clauses, start=1):
        base, middle = SLOT * k, f"Q{k}"
        ids = (f"c{k}s", f"c{k}t", f"c{k}n", f"c{k}e")
        clause_trips[k] = ids
        gadget = [
            _trip(ids[0], HOME, SHARED, base, [SINGLE]),
            _trip(ids[1], SHARED, middle, base + 20, [SINGLE, DOUBLE] if any(lit > 0 for lit in clause) else [SINGLE]),
            _trip(ids[2], middle, SHARED, base + 40, [SINGLE, DOUBLE] if any(lit < 0 for lit in clause) else [SINGLE]),
            _trip(ids[3], SHARED, HOME, base + 60, [SINGLE]),
        ]
        trips += gadget
        connections += [
            _connection(f"c{k}a", gadget[0], gadget[1], [(SINGLE, SINGLE), (SINGLE, DOUBLE)]),
            _connection(f"c{k}b", gadget[1], gadget[2], [(SINGLE, DOUBLE), (DOUBLE, SINGLE)]),
            _connection(f"c{k}c", gadget[2], gadget[3], [(SINGLE, SINGLE), (DOUBLE, SINGLE)]),
        ]
        depots.append(Depot(middle, "u", 0, 0))

    literal_trips = {}
    for j, clauses in _occurrences(f).items():
        chain = [_trip(f"x{j}s", HOME, SHARED, 10, [TRUE, FALSE])]
        for k in clauses:
            base, clause = SLOT * k, f.clauses[k - 1]
            chain.append(_trip(f"x{j}t{k}", SHARED, f"Q{k}", base + 20,
                               [TRUE, FALSE] + ([SINGLE] if j in clause else [])))
            chain.append(_trip(f"x{j}n{k}", f"Q{k}", SHARED, base + 40,
                               [TRUE, FALSE] + ([SINGLE] if -j in clause else [])))
        chain.append(_trip(f"x{j}e", SHARED, HOME, SLOT * m + 60, [TRUE, FALSE]))

        for i, (pred, succ) in enumerate(zip(chain, chain[1:]), start=1):
            allowed = [(TRUE, TRUE), (FALSE, FALSE)]
            pred_single = SINGLE in pred.allowed_compositions
            succ_single = SINGLE in succ.allowed_compositions
            if pred.arr_station == SHARED:
                # a true train lends at A, a false train takes its unit back at A
                if succ_single:
                    allowed.append((TRUE, SINGLE))
                if pred_single:
                    allowed.append((SINGLE, FALSE))
            else:
                if pred_single:
                    allowed.append((SINGLE, TRUE))
                if succ_single:
                    allowed.append((FALSE, SINGLE))
            connections.append(_connection(f"x{j}c{i}", pred, succ, allowed))
        trips += chain
        literal_trips[j] = tuple(t.id for t in chain)

    zero = Fraction(0)
    instance = Instance(
        unit_types=(UNIT,),
        compositions=(Composition(SINGLE, ("u",)), Composition(DOUBLE, ("u", "u")),
                      Composition(TRUE, ("u", "u")), Composition(FALSE, ("u", "u"))),
        trips=tuple(trips),
        connections=tuple(connections),
        depots=tuple(depots),
        cost_params=CostParams(zero, zero, zero, zero),
        n_max=2,
        strict_end_inventory=True,
        horizon_end=SLOT * m + 80,
        name=f"3sat-{n}x{m}",
    )
    logger.debug("3SAT with %d variables and %d clauses gives %d trips", n, m, len(trips))
    return instance, ReductionCertificate(clause_trips, literal_trips)


@dataclass(frozen=True)
class ReductionVerdict:
    satisfiable: bool
    feasible: bool
    assignment: dict[int, bool] = field(default_factory=dict)
    decoded_ok: bool = True

    @property
    def agree(self) -> bool:
        return self.satisfiable == self.feasible and self.decoded_ok

    def __str__(self) -> str:
        label = "Agree" if self.agree else "Disagree"
        return f"{label}(sat={self.satisfiable}, feasible={self.feasible})"


def verify_reduction(f: Cnf3, settings: Settings | None = None) -> ReductionVerdict:
    """Compare brute-force satisfiability with integer feasibility of the composition model."""
    settings = settings or Settings()
    instance, certificate = reduce_3sat(f)
    satisfiable = brute_force_sat(f) is not None
    solved = solve_variant(instance, VARIANT.C, relax=False, settings=settings)
    feasible = solved.solution.status is SOLVE_STATUS.OPTIMAL
    if not feasible:
        return ReductionVerdict(satisfiable, False)
    assignment = certificate.decode(solved.solution.values)
    ok = f.satisfied_by(assignment)
    if not ok:
        logger.error("decoded assignment %s does not satisfy the formula", assignment)
    return ReductionVerdict(satisfiable, True, assignment, ok)
