"""Line-oriented definitions of a group and named subsets.

    # comment
    group Z
    set E = residues(2; 0)
    set S = union(E, squares)

Statements may also be separated by ``;`` outside parentheses.  Arguments
of ``translate``, ``union``, ``inter`` and ``compl`` are set names or nested
expressions.  ``periodic(left; lo:centre; right)`` takes bit strings and
describes an eventually periodic subset of Z.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import groups as gr
from . import subsets as ss
from .groups import Group
from .periodic import PeriodicSpec
from .poly import parse_poly


class DSLError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass
class Program:
    group: Group = field(default_factory=lambda: Group(gr.INTEGER))
    sets: dict = field(default_factory=dict)  # name -> SubsetExpr, in definition order


_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")
_CALL = re.compile(r"^([a-z_]+)\s*\((.*)\)$", re.S)


def split_top(text: str, sep: str) -> list[str]:
    """Split on ``sep`` at parenthesis depth zero."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError("unbalanced parentheses")
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ValueError("unbalanced parentheses")
    out.append("".join(cur))
    return out


def _args(body: str, sep: str = ",") -> list[str]:
    parts = [p.strip() for p in split_top(body, sep)]
    return [] if parts == [""] else parts


class _Parser:
    def __init__(self, prog: Program):
        self.prog = prog

    @property
    def group(self) -> Group:
        return self.prog.group

    def element(self, text: str):
        return gr.parse_element(self.group, text)

    def elements(self, body: str) -> list:
        # lattice tuples may contain commas, so split at depth zero only
        return [self.element(t) for t in _args(body)]

    def expr(self, text: str) -> ss.SubsetExpr:
        text = text.strip()
        if _NAME.match(text):
            if text in self.prog.sets:
                return self.prog.sets[text]
            if text in ("squares", "factorials"):
                return ss.Sequence(text, group=self.group)
            raise ValueError(f"undefined set {text!r}")
        m = _CALL.match(text)
        if not m:
            raise ValueError(f"cannot parse expression {text!r}")
        op, body = m.group(1), m.group(2)
        handler = getattr(self, "op_" + op, None)
        if handler is None:
            raise ValueError(f"unknown constructor {op!r}")
        return handler(body)

    def op_finite(self, body):
        return ss.Finite(self.group, tuple(self.elements(body)))

    def op_residues(self, body):
        parts = _args(body, ";")
        if len(parts) != 2:
            raise ValueError("residues takes 'm; r1, r2, ...'")
        m = int(parts[0])
        if m < 1:
            raise ValueError("modulus must be >= 1")
        return ss.Residues(m, frozenset(int(r) for r in _args(parts[1])), self.group)

    def op_powers(self, body):
        return ss.Sequence(ss.POWERS, base=int(body), group=self.group)

    def op_gaps(self, body):
        return ss.Sequence(ss.GAPS, gap=parse_poly(body), group=self.group)

    def op_blocks(self, body):
        parts = _args(body)
        if len(parts) != 2:
            raise ValueError("blocks takes an offset and a length polynomial")
        return ss.Blocks(parse_poly(parts[0]), parse_poly(parts[1]), self.group)

    def op_fp(self, body):
        return ss.FPSet(self.group, tuple(self.elements(body)))

    def op_fp_shifted(self, body):
        parts = _args(body, ";")
        if len(parts) != 2:
            raise ValueError("fp_shifted takes 'g1, ..., gk; b1, ..., bk'")
        return ss.FPSet(self.group, tuple(self.elements(parts[0])), tuple(self.elements(parts[1])))

    def op_translate(self, body):
        parts = _args(body)
        if len(parts) != 2:
            raise ValueError("translate takes an element and a set")
        return ss.Translate(self.element(parts[0]), self.expr(parts[1]))

    def _fold(self, body, cls):
        parts = [self.expr(p) for p in _args(body)]
        if not parts:
            raise ValueError("need at least one operand")
        acc = parts[0]
        for p in parts[1:]:
            acc = cls(acc, p)
        return acc

    def op_union(self, body):
        return self._fold(body, ss.Union)

    def op_inter(self, body):
        return self._fold(body, ss.Intersection)

    def op_compl(self, body):
        return ss.Complement(self.expr(body))

    def op_periodic(self, body):
        parts = _args(body, ";")
        if len(parts) != 3 or ":" not in parts[1]:
            raise ValueError("periodic takes 'left; lo:centre; right'")
        lo, centre = parts[1].split(":", 1)
        bits = lambda s: tuple(int(c) for c in s.strip())
        spec = PeriodicSpec(bits(parts[0]), bits(centre), int(lo), bits(parts[2])).normalized()
        return ss.EventuallyPeriodic(spec, self.group)


def parse(text: str) -> Program:
    """Parse a whole definition file; errors carry the 1-based line number."""
    prog = Program()
    parser = _Parser(prog)
    seen_group = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            stmts = [s.strip() for s in split_top(line, ";")]
        except ValueError as exc:
            raise DSLError(str(exc), lineno) from None
        # a ';' inside residues(...) is protected by the parentheses
        for stmt in filter(None, stmts):
            try:
                if stmt.startswith("group "):
                    if prog.sets:
                        raise ValueError("group must be declared before any set")
                    if seen_group:
                        raise ValueError("group declared twice")
                    prog.group = gr.parse_group(stmt[len("group "):])
                    seen_group = True
                elif stmt.startswith("set "):
                    name, sep, rhs = stmt[len("set "):].partition("=")
                    name = name.strip()
                    if not sep or not _NAME.match(name):
                        raise ValueError("expected 'set <name> = <expression>'")
                    if name in prog.sets:
                        raise ValueError(f"set {name!r} defined twice")
                    prog.sets[name] = parser.expr(rhs)
                else:
                    raise ValueError(f"unknown statement {stmt!r}")
            except (ValueError, LookupError) as exc:
                raise DSLError(str(exc), lineno) from None
    return prog


def parse_file(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def render(name: str, A: ss.SubsetExpr) -> str:
    return f"set {name} = {ss.describe(A)}"
