from __future__ import annotations
from fractions import Fraction
import logging
from pathlib import Path
import re
import string

from rsched.data.rs_types import SENSE
from rsched.errors import InstanceFormatError
from rsched.model.formulation import Constraint, MilpModel, Variable

logger = logging.getLogger(__name__)

_PLAIN = set(string.ascii_letters + string.digits + "!\"#$%&()/,.;?@_`'|~")
_ESCAPE = re.compile(r"\{([0-9a-f]+)\}")
_SECTIONS = ("minimize", "subject to", "bounds", "general", "end")
_LINE_TERMS = 8


def escape(name: str) -> str:
    """Characters an LP reader rejects are written as {hex code point}; so is a leading digit or period."""
    out = []
    for i, ch in enumerate(name):
        if ch in _PLAIN and not (i == 0 and (ch.isdigit() or ch == ".")):
            out.append(ch)
        else:
            out.append(f"{{{ord(ch):x}}}")
    return "".join(out)


def unescape(name: str) -> str:
    return _ESCAPE.sub(lambda m: chr(int(m.group(1), 16)), name)


def format_number(value) -> str:
    """Exact decimal text when the value has one, numerator/denominator otherwise."""
    q = Fraction(value)
    d, twos, fives = q.denominator, 0, 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    scaled = abs(q.numerator) * 10 ** places // q.denominator
    digits = str(scaled).rjust(places + 1, "0")
    text = digits if places == 0 else f"{digits[:-places]}.{digits[-places:]}"
    return f"-{text}" if q < 0 else text


def _terms(coeffs, fallback: str) -> list[str]:
    terms = [f"{'-' if a < 0 else '+'} {format_number(abs(a))} {escape(v)}" for v, a in coeffs if a != 0]
    return terms or [f"+ 0 {escape(fallback)}"]


def _wrapped(head: str, terms: list[str], tail: str = "") -> list[str]:
    lines = []
    for i in range(0, len(terms), _LINE_TERMS):
        chunk = " ".join(terms[i:i + _LINE_TERMS])
        lines.append(f" {head} {chunk}" if i == 0 else f"   {chunk}")
    if tail:
        lines[-1] += f" {tail}"
    return lines


def format_lp(model: MilpModel) -> str:
    first = model.variables[0].name if model.variables else "none"
    lines = [f"\\ Problem name: {model.name}", "Minimize"]
    lines += _wrapped("obj:", _terms(((v.name, v.cost) for v in model.variables), first))
    lines.append("Subject To")
    for c in model.constraints:
        lines += _wrapped(f"{escape(c.name)}:", _terms(c.coeffs, first), f"{c.sense.value} {format_number(c.rhs)}")
    lines.append("Bounds")
    for v in model.variables:
        if v.ub is None:
            lines.append(f" {escape(v.name)} >= {format_number(v.lb)}")
        else:
            lines.append(f" {format_number(v.lb)} <= {escape(v.name)} <= {format_number(v.ub)}")
    integers = [escape(v.name) for v in model.variables if v.integer]
    if integers:
        lines.append("General")
        lines += [" " + " ".join(integers[i:i + _LINE_TERMS]) for i in range(0, len(integers), _LINE_TERMS)]
    lines.append("End")
    return "\n".join(lines) + "\n"


def write_lp(model: MilpModel, path: str | Path) -> None:
    Path(path).write_text(format_lp(model), encoding="utf-8")
    logger.info("wrote %s (%d variables, %d constraints) to %s", model.name, *model.size, path)


def _sections(text: str) -> tuple[str, dict[str, list[str]]]:
    name = ""
    found: dict[str, list[str]] = {s: [] for s in _SECTIONS}
    current = None
    for line in text.splitlines():
        stripped = line.strip()
        if stripped.startswith("\\"):
            if "Problem name:" in stripped:
                name = stripped.split("Problem name:", 1)[1].strip()
            continue
        if stripped.lower() in _SECTIONS:
            current = stripped.lower()
            continue
        if stripped:
            if current is None:
                raise InstanceFormatError(f"text outside any section: {stripped!r}")
            found[current].append(stripped)
    return name, found


def _linear(tokens: list[str]) -> tuple[list[tuple[str, Fraction]], list[str]]:
    """Read signed terms up to a sense token; returns the terms and the remaining tokens."""
    coeffs = []
    i = 0
    while i < len(tokens) and tokens[i] not in ("<=", ">=", "="):
        sign, value, var = tokens[i:i + 3]
        a = Fraction(value) * (-1 if sign == "-" else 1)
        if a != 0:
            coeffs.append((unescape(var), a))
        i += 3
    return coeffs, tokens[i:]


def parse_lp(text: str) -> MilpModel:
    """Read a file written by format_lp back into a model."""
    name, sections = _sections(text)
    try:
        objective, _ = _linear(" ".join(sections["minimize"]).split()[1:])
        costs = dict(objective)

        constraints = []
        tokens = " ".join(sections["subject to"]).split()
        while tokens:
            c_name = unescape(tokens[0].rstrip(":"))
            coeffs, rest = _linear(tokens[1:])
            constraints.append(Constraint(c_name, tuple(coeffs), SENSE(rest[0]), Fraction(rest[1])))
            tokens = rest[2:]

        integers = {unescape(t) for line in sections["general"] for t in line.split()}
        variables = []
        for line in sections["bounds"]:
            parts = line.split()
            if len(parts) == 3:
                v, lb, ub = unescape(parts[0]), Fraction(parts[2]), None
            else:
                v, lb, ub = unescape(parts[2]), Fraction(parts[0]), Fraction(parts[4])
            variables.append(Variable(v, lb, ub, v in integers, costs.get(v, Fraction(0))))
    except (IndexError, ValueError) as e:
        raise InstanceFormatError(f"malformed LP file: {e}") from None
    return MilpModel(name, tuple(variables), tuple(constraints), {v.name: v.name for v in variables})


def read_lp(path: str | Path) -> MilpModel:
    return parse_lp(Path(path).read_text(encoding="utf-8"))
