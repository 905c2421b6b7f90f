from __future__ import annotations
from pathlib import Path

from rsched.errors import InstanceFormatError
from rsched.reduction.sat3 import Cnf3


def parse_dimacs(text: str) -> Cnf3:
    """
    Read a DIMACS CNF document. Comment lines start with `c`, the problem line
    is `p cnf <vars> <clauses>`, and every clause ends with 0.
    """
    n_vars = n_clauses = None
    literals: list[int] = []
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InstanceFormatError(f"line {number}: bad problem line {line!r}")
            n_vars, n_clauses = int(parts[2]), int(parts[3])
            continue
        if n_vars is None:
            raise InstanceFormatError(f"line {number}: clause before the problem line")
        try:
            literals += [int(tok) for tok in line.split()]
        except ValueError:
            raise InstanceFormatError(f"line {number}: {line!r} is not a list of literals") from None
    if n_vars is None:
        raise InstanceFormatError("no problem line")

    clauses, current = [], []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(current))
            current = []
        else:
            current.append(lit)
    if current:
        clauses.append(tuple(current))
    if len(clauses) != n_clauses:
        raise InstanceFormatError(f"problem line announces {n_clauses} clauses, found {len(clauses)}")
    try:
        return Cnf3(n_vars, tuple(clauses))
    except ValueError as e:
        raise InstanceFormatError(str(e)) from None


def read_dimacs(path: str | Path) -> Cnf3:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))


def format_dimacs(f: Cnf3) -> str:
    lines = [f"p cnf {f.n_vars} {len(f.clauses)}"]
    lines += [" ".join(str(lit) for lit in c) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"
