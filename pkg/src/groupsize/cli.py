"""Command line front end: classify, relations, hindman."""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import subsets as ss
from .borel import TV, Budget, Verdict
from .checkers import InconsistencyError, classify
from .dsl import DSLError, parse_file
from .fp import hindman_check, hindman_sweep
from .groups import Group
from .tags import Prop

RECORD_VERSION = "groupsize-records/1"

EXIT_OK, EXIT_PARSE, EXIT_INCONSISTENT = 0, 2, 3


@dataclass(frozen=True)
class RunConfig:
    input: str
    props: tuple
    budget: Budget
    format: str = "text"
    workers: int = 1

    def echo(self) -> str:
        return (f"input={self.input} props={','.join(map(str, self.props))} "
                f"budget={self.budget.short()} format={self.format}")


def _canon(obj) -> str:
    """Order-independent rendering (frozensets of strings hash per process)."""
    if isinstance(obj, (set, frozenset)):
        return "{" + ",".join(sorted(_canon(x) for x in obj)) + "}"
    if isinstance(obj, (tuple, list)):
        return "(" + ",".join(_canon(x) for x in obj) + ")"
    if isinstance(obj, Group):
        return str(obj)
    if dataclasses.is_dataclass(obj):
        return type(obj).__name__ + _canon(tuple(getattr(obj, f.name) for f in dataclasses.fields(obj) if f.compare))
    return repr(obj)


def witness_digest(v: Verdict) -> str:
    if v.value is TV.UNKNOWN:
        return "-"
    text = _canon((v.source, v.note, v.path))
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def _budget(args) -> Budget:
    return Budget(
        union_width=args.budget_width, intersection_depth=args.budget_depth,
        support_cap=args.support_cap, radius=args.radius, search_radius=args.search_radius,
        n_max=args.nmax, k=args.k, y_size=args.y_size,
    )


def _props(text: str) -> tuple:
    if text in ("", "all"):
        return tuple(Prop)
    return tuple(Prop.parse(t) for t in text.split(","))


def _classify_one(item, config: RunConfig):
    name, A = item
    return classify(A, config.budget, config.props, name=name)


def run_classify(prog, config: RunConfig):
    items = list(prog.sets.items())
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            return list(pool.map(lambda it: _classify_one(it, config), items))
    return [_classify_one(it, config) for it in items]


def format_reports(reports, config: RunConfig) -> str:
    lines = []
    if config.format == "records":
        lines.append(f"# {RECORD_VERSION}")
        lines.append(f"# {config.echo()}")
        lines.append("# name|property|value|scope|witness-digest|budget")
        for rep in reports:
            for p, v in rep.verdicts.items():
                scope = "-" if v.value is TV.UNKNOWN else v.scope
                lines.append(f"{rep.name}|{p}|{v.value}|{scope}|{witness_digest(v)}|{config.budget.short()}")
        return "\n".join(lines) + "\n"
    lines.append(f"config: {config.echo()}")
    for rep in reports:
        lines.append(f"{rep.name}:")
        for p, v in rep.verdicts.items():
            why = f"{v.source}: {v.note}" if v.note else v.source
            lines.append(f"  {str(p):<13} {str(v):<16} [{why}]")
        bad = [rel for rel, status in rep.consistency if status == "contradiction"]
        lines.append("  consistency: " + ("ok" if not bad else "CONTRADICTION " + "; ".join(bad)))
    return "\n".join(lines) + "\n"


# -- relations --------------------------------------------------------------

def _pair_status(a: Verdict, b: Verdict, same: bool) -> str:
    """PASS when both are Global and agree (``same``) or disagree (not ``same``)."""
    if not (a.is_global and b.is_global):
        return "UNKNOWN"
    return "PASS" if (a.value is b.value) == same else "FAIL"


def relation_rows(prog, budget: Budget, tamper_thick: bool = False) -> list:
    """``(relation, instance, status)`` rows over every declared set."""
    def verdicts(A):
        vs = dict(classify(A, budget).verdicts)
        if tamper_thick:
            # self-test: a deliberately broken thick rule must be caught
            vs[Prop.THICK] = vs[Prop.THICK].negated()
        return vs

    rows = []
    names = list(prog.sets)
    table = {n: verdicts(prog.sets[n]) for n in names}
    comp = {n: verdicts(ss.Complement(prog.sets[n])) for n in names}
    for n in names:
        v, c = table[n], comp[n]
        rows.append(("large(A) = not thick(G-A)", n, _pair_status(v[Prop.LARGE], c[Prop.THICK], False)))
        rows.append(("small(A) = not prethick(A)", n, _pair_status(v[Prop.SMALL], v[Prop.PRETHICK], False)))
        rows.append(("small(A) = extralarge(G-A)", n, _pair_status(v[Prop.SMALL], c[Prop.EXTRALARGE], True)))
        for p, q in (
            (Prop.THIN, Prop.SPARSE), (Prop.SPARSE, Prop.SCATTERED), (Prop.SCATTERED, Prop.SMALL),
            (Prop.PSMALL, Prop.ALMOST_PSMALL), (Prop.ALMOST_PSMALL, Prop.NEAR_PSMALL),
            (Prop.PSMALL, Prop.WEAKLY_PSMALL),
        ):
            a, b = v[p], v[q]
            if q is Prop.SMALL and prog.group.is_finite:
                continue  # the small-side chain is stated for infinite groups
            if a.is_global and b.is_global:
                status = "FAIL" if (a.value is TV.TRUE and b.value is TV.FALSE) else "PASS"
            else:
                status = "UNKNOWN"
            rows.append((f"{p} => {q}", n, status))
    for prop in (Prop.SMALL, Prop.SPARSE):
        members = [n for n in names if table[n][prop].is_global and table[n][prop].value is TV.TRUE]
        for i, a in enumerate(members):
            for b in members[i:]:
                U = ss.Union(prog.sets[a], prog.sets[b])
                u = verdicts(U)[prop]
                status = "UNKNOWN" if not u.is_global else ("PASS" if u.value is TV.TRUE else "FAIL")
                rows.append((f"{prop} ideal", f"{a}+{b}", status))
    return rows


# -- entry points -----------------------------------------------------------------

def _add_budget_flags(p):
    d = Budget()
    p.add_argument("--budget-width", type=int, default=d.union_width)
    p.add_argument("--budget-depth", type=int, default=d.intersection_depth)
    p.add_argument("--support-cap", type=int, default=d.support_cap)
    p.add_argument("--radius", type=int, default=d.radius)
    p.add_argument("--search-radius", type=int, default=d.search_radius)
    p.add_argument("--nmax", type=int, default=d.n_max)
    p.add_argument("--k", type=int, default=d.k)
    p.add_argument("--y-size", type=int, default=d.y_size)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="groupsize", description="Size properties of subsets of groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify every set declared in a DSL file")
    c.add_argument("input")
    c.add_argument("--props", default="all", help="comma separated, e.g. large,thick")
    c.add_argument("--format", choices=("text", "records"), default="text")
    c.add_argument("--workers", type=int, default=1)
    _add_budget_flags(c)

    r = sub.add_parser("relations", help="check dualities, ideal closure and implications")
    r.add_argument("input")
    r.add_argument("--self-test", action="store_true",
                   help="negate the thick verdicts; the suite must report FAIL")
    _add_budget_flags(r)

    h = sub.add_parser("hindman", help="monochromatic finite sums in colourings of 1..N")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--colors", type=int, default=2)
    h.add_argument("--k", type=int, default=2)
    h.add_argument("--distinct", action="store_true",
                   help="require distinct generators (default for k = 2 allows x = y)")
    g = h.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true", help="every colouring")
    g.add_argument("--coloring", help="file with one colour per line, or a digit string")
    return ap


def _read_coloring(text: str) -> tuple:
    try:
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    except OSError:
        pass
    tokens = text.split() if any(ch.isspace() for ch in text.strip()) else list(text.strip())
    return tuple(int(t) for t in tokens)


def cmd_hindman(args, out) -> int:
    schur = args.k == 2 and not args.distinct
    if args.all:
        forced, bad = hindman_sweep(args.n, args.colors, args.k, schur)
        mode = "schur" if schur else "distinct"
        if forced:
            out.write(f"PASS: every {args.colors}-colouring of 1..{args.n} has a monochromatic "
                      f"{args.k}-generator finite-sums set ({mode})\n")
        else:
            classes = [[i + 1 for i, c in enumerate(bad) if c == col] for col in range(args.colors)]
            out.write(f"NONE: colouring {''.join(map(str, bad))} "
                      f"({' / '.join('{' + ', '.join(map(str, cl)) + '}' for cl in classes)}) "
                      f"has no monochromatic set ({mode})\n")
        return EXIT_OK
    coloring = _read_coloring(args.coloring)
    if len(coloring) != args.n:
        raise ValueError(f"colouring has {len(coloring)} entries, expected {args.n}")
    res = hindman_check(coloring, args.k, schur)
    if res is None:
        out.write("NONE\n")
    else:
        out.write(f"FOUND colour {res.color}: generators {res.generators} sums {res.elements}\n")
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "hindman":
            return cmd_hindman(args, out)
        budget = _budget(args)
        prog = parse_file(args.input)
        if args.command == "classify":
            config = RunConfig(args.input, _props(args.props), budget, args.format, args.workers)
            reports = run_classify(prog, config)
            out.write(format_reports(reports, config))
            return EXIT_OK if all(r.consistent for r in reports) else EXIT_INCONSISTENT
        rows = relation_rows(prog, budget, tamper_thick=args.self_test)
        for rel, inst, status in rows:
            out.write(f"{status:<7} {rel:<30} {inst}\n")
        fails = [r for r in rows if r[2] == "FAIL"]
        counts = {s: sum(1 for r in rows if r[2] == s) for s in ("PASS", "UNKNOWN", "FAIL")}
        out.write(f"summary: {counts['PASS']} pass, {counts['UNKNOWN']} unknown, {counts['FAIL']} fail\n")
        if fails:
            out.write(f"counterexample: {fails[0][1]} ({fails[0][0]})\n")
            return EXIT_INCONSISTENT
        return EXIT_OK
    except DSLError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
