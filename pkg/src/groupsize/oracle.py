"""Exact classification of structured subsets of Z, and brute-force checks.

Eventually periodic sets (``PeriodicSpec``) and one-sided sequences with
unbounded increasing gaps (``GapSpec``) are decided by the rules below.
Write ``P`` for the lcm of the two period words.

* Large iff both period words contain a 1: gaps are then bounded by the
  centre width plus ``2P``, and an interval ``F`` of that length covers Z.
  A zero period word leaves a half-line free of ``A`` which no finite
  ``F`` covers.
* Thick iff some period word is all ones (a half-line inside ``A``);
  otherwise runs are bounded by the centre width plus ``2P``.
* Prethick iff ``A`` is infinite: a nonzero period word makes
  ``[0, P) + A`` contain a half-line.  Finite sets are small.
* Small, Thin, Sparse, Scattered, P-small and almost P-small iff ``A`` is
  finite.  For infinite ``A`` the translate by ``P`` meets ``A`` in a whole
  periodic tail (not thin); ``Y = PZ`` refutes sparseness; ``g_i = P 2^i M``
  with a constant tail shift builds a piecewise shifted FP-set; any ``P + 1``
  translates contain two congruent mod ``P`` whose intersection is that tail.
* Near P-small for ``n`` depends only on the shifts mod ``P``: two translates
  meet finitely iff their shifted period words are disjoint on both sides.
  An exhaustive search over residues decides it.  Weakly P-small for ``n``
  implies near; for purely periodic sets shifts mod ``P`` also suffice for
  exact disjointness (translation by ``P`` is an automorphism of ``A``),
  otherwise an exact search over shifts up to an explicit bound decides it.

For gap sequences ``s_{k+1} - s_k -> oo`` monotonically, ``s_a + g = s_b``
forces the gap at ``a`` to be at most ``|g|``, which happens for finitely
many ``a``: the set is thin, hence sparse, scattered and small, and every
two distinct translates meet finitely (almost and near P-small).
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import groups as gr
from . import subsets as ss
from .borel import GLOBAL, TV, Verdict, unknown
from .periodic import PeriodicSpec
from .tags import Prop


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class RuleCertificate:
    """Records which rule produced a verdict; ``check`` re-runs the rule."""

    rule: str
    recompute: Callable[[], bool]
    expected: bool
    data: tuple = ()

    def check(self) -> bool:
        return bool(self.recompute()) == self.expected


def _rule(value: bool, rule: str, recompute, data=()) -> Verdict:
    return Verdict(
        TV.of(value), GLOBAL, None, None, "oracle", rule,
        RuleCertificate(rule, recompute, value, tuple(data)),
    )


# -- periodic rules ----------------------------------------------------------

def _shifted_disjoint(word: tuple, d: int) -> bool:
    """Is the periodic word disjoint from its translate by ``d``?"""
    n = len(word)
    return not any(word[j] and word[(j - d) % n] for j in range(n))


def _compatible(spec: PeriodicSpec, d: int) -> bool:
    return _shifted_disjoint(spec.left, d) and _shifted_disjoint(spec.right, d)


def _residue_clique(spec: PeriodicSpec, size: int) -> Optional[tuple]:
    """``size`` residues mod P, starting at 0, pairwise compatible."""
    P = spec.period
    ok = [d for d in range(P) if _compatible(spec, d)]
    okset = set(ok)

    def grow(chosen: tuple):
        if len(chosen) == size:
            return chosen
        for r in range(chosen[-1] + 1, P):
            if all((r - c) % P in okset for c in chosen):
                found = grow(chosen + (r,))
                if found:
                    return found
        return None

    return grow((0,)) if size >= 1 else ()


def near_psmall_n(spec: PeriodicSpec, n: int) -> Verdict:
    """``n + 1`` translates meeting pairwise in finite sets."""
    spec = _require_normal(spec)
    if spec.is_finite():
        return _rule(True, "finite set", lambda: spec.is_finite())
    found = _residue_clique(spec, n + 1)
    return _rule(
        found is not None, f"residue search mod {spec.period}",
        lambda: _residue_clique(spec, n + 1) is not None, found or (),
    )


def _pure(spec: PeriodicSpec) -> bool:
    return not spec.center and spec.left == spec.right


def _disjoint_family(spec: PeriodicSpec, shifts) -> bool:
    translates = [spec.translate(t) for t in shifts]
    for a, b in itertools.combinations(translates, 2):
        meet = a.intersection(b)
        if not meet.is_finite() or meet.cardinality():
            return False
    return True


def _spread_shifts(spec: PeriodicSpec, count: int) -> tuple:
    step = len(spec.center) + 1
    return tuple(i * step - spec.lo for i in range(count))


def exhaustive_bound(spec: PeriodicSpec, n: int) -> int:
    """Shifts up to this bound suffice when looking for ``n + 1`` pairwise
    disjoint translates (the first one fixed at 0).

    Whether ``A`` and ``d + A`` are disjoint depends only on ``d mod P`` (and
    the sign of ``d``) once ``|d| >= D = width + 2P``.  In a sorted family any
    gap of at least ``D + P`` can be shortened by a multiple of ``P`` into
    ``[D, D + P)`` without changing the residue or the size class of any
    difference across it, so every gap may be taken below ``D + P``.
    """
    D = len(spec.center) + 2 * spec.period
    return n * (D + spec.period)


def weakly_psmall_n(spec: PeriodicSpec, n: int) -> Verdict:
    """``n + 1`` pairwise disjoint translates, decided exactly."""
    spec = _require_normal(spec)
    if spec.is_finite():
        shifts = _spread_shifts(spec, n + 1)
        return _rule(True, "finite set: spread translates",
                     lambda: _disjoint_family(spec, shifts), shifts)
    near = near_psmall_n(spec, n)
    if near.value is TV.FALSE:
        return _rule(False, "not near P-small",
                     lambda: _residue_clique(spec, n + 1) is not None)
    if _pure(spec):
        found = _residue_clique(spec, n + 1)
        # pure sets: finite intersection between translates means empty
        return _rule(True, f"residue search mod {spec.period}",
                     lambda: _disjoint_family(spec, found), found)
    bound = exhaustive_bound(spec, n)
    found = _disjoint_search(spec, n + 1, bound)
    if found is not None:
        return _rule(True, f"exact search up to {bound}",
                     lambda: _disjoint_family(spec, found), found)
    return _rule(False, f"exhaustive search up to {bound}",
                 lambda: _disjoint_search(spec, n + 1, bound) is not None)


def _disjoint_search(spec: PeriodicSpec, size: int, bound: int) -> Optional[tuple]:
    """Increasing shifts ``0 = t_0 < ... < t_{size-1} <= bound`` with pairwise
    disjoint translates."""
    @functools.lru_cache(maxsize=None)
    def ok(d: int) -> bool:
        return d != 0 and _disjoint_family(spec, (0, d))

    def grow(chosen: tuple, pool: list):
        if len(chosen) == size:
            return chosen
        for i, t in enumerate(pool):
            if len(chosen) + len(pool) - i < size:
                return None
            found = grow(chosen + (t,), [u for u in pool[i + 1:] if ok(u - t)])
            if found:
                return found
        return None

    return grow((0,), [t for t in range(1, bound + 1) if ok(t)])


def _require_normal(spec: PeriodicSpec) -> PeriodicSpec:
    if not spec.is_normalized():
        raise OracleError("periodic spec is not normalized")
    return spec


def classify_periodic(spec: PeriodicSpec) -> dict:
    """Global verdicts for every property of an eventually periodic set."""
    spec = _require_normal(spec)
    L, R = spec.left, spec.right
    finite = spec.is_finite
    out = {
        Prop.LARGE: _rule(any(L) and any(R), "both period words nonzero",
                          lambda: any(spec.left) and any(spec.right)),
        Prop.THICK: _rule(all(L) or all(R), "some period word all ones",
                          lambda: all(spec.left) or all(spec.right)),
        Prop.PRETHICK: _rule(not finite(), "infinite", lambda: not spec.is_finite()),
        Prop.EXTRALARGE: _rule(all(L) and all(R), "complement finite",
                               lambda: spec.complement().is_finite()),
    }
    for p in (Prop.SMALL, Prop.THIN, Prop.SPARSE, Prop.SCATTERED,
              Prop.PSMALL, Prop.ALMOST_PSMALL, Prop.WEAKLY_PSMALL, Prop.NEAR_PSMALL):
        out[p] = _rule(finite(), "finite" if finite() else f"periodic tail, period {spec.period}",
                       lambda: spec.is_finite())
    return out


# -- gap sequences -----------------------------------------------------------

@dataclass(frozen=True)
class GapSpec:
    """``A = {s_0 < s_1 < ...}`` in ``[0, oo)`` with a gap-growth class."""

    name: str
    gap: Callable[[int], int]
    gap_class: str  # "unbounded" or "bounded"
    bound: Optional[int] = None

    @classmethod
    def from_sequence(cls, A: ss.Sequence) -> "GapSpec":
        if A.kind == ss.SQUARES:
            return cls("squares", lambda k: 2 * k + 1, "unbounded")
        if A.kind == ss.POWERS:
            b = A.base
            return cls(f"powers({b})", lambda k: b**k * (b - 1), "unbounded")
        if A.kind == ss.FACTORIALS:
            return cls("factorials", lambda k: math.factorial(k + 1) * (k + 1), "unbounded")
        if A.gap.degree == 0:
            return cls(f"gaps({A.gap})", A.gap, "bounded", A.gap(0))
        return cls(f"gaps({A.gap})", A.gap, "unbounded")

    def eventually_exceeds(self, g: int) -> int:
        """An index from which every gap exceeds ``g`` (unbounded class only)."""
        if self.gap_class != "unbounded":
            raise OracleError("gaps are bounded")
        k = 0
        # gaps of every supported kind are eventually non-decreasing
        while self.gap(k) <= g or any(self.gap(j + 1) < self.gap(j) for j in range(k, k + 4)):
            k += 1
        return k


def classify_gap(spec: GapSpec) -> dict:
    """Global verdicts for an unbounded-gap sequence.  Bounded gaps make the
    set eventually periodic; use :func:`classify_periodic` for those."""
    if spec.gap_class != "unbounded":
        raise OracleError("bounded gap sequences are eventually periodic; classify them as such")
    unb = lambda: spec.gap(spec.eventually_exceeds(64)) > 64
    yes = lambda p, why: _rule(True, why, unb)
    no = lambda p, why: _rule(False, why, lambda: not unb())
    out = {
        Prop.LARGE: no(Prop.LARGE, "one-sided with unbounded gaps"),
        Prop.THICK: no(Prop.THICK, "runs have length 1 eventually"),
        Prop.PRETHICK: no(Prop.PRETHICK, "small"),
        Prop.EXTRALARGE: no(Prop.EXTRALARGE, "complement contains a negative half-line"),
        Prop.THIN: yes(Prop.THIN, "gaps increase to infinity"),
        Prop.SPARSE: yes(Prop.SPARSE, "thin"),
        Prop.SCATTERED: yes(Prop.SCATTERED, "sparse"),
        Prop.SMALL: yes(Prop.SMALL, "scattered"),
        Prop.ALMOST_PSMALL: yes(Prop.ALMOST_PSMALL, "thin: distinct translates meet finitely"),
        Prop.NEAR_PSMALL: yes(Prop.NEAR_PSMALL, "thin: distinct translates meet finitely"),
        Prop.PSMALL: unknown(source="oracle", note="no rule for gap sequences"),
        Prop.WEAKLY_PSMALL: unknown(source="oracle", note="no rule for gap sequences"),
    }
    return out


# -- dispatch ---------------------------------------------------------------

def oracle_verdicts(A: ss.SubsetExpr) -> Optional[dict]:
    """Global verdicts for ``A`` when a rule applies, else None."""
    spec = ss.periodic_form(A)
    if spec is not None:
        return classify_periodic(spec)
    if isinstance(A, ss.Sequence):
        return classify_gap(GapSpec.from_sequence(A))
    return None


def oracle_psmall_n(A: ss.SubsetExpr, prop: Prop, n: int) -> Optional[Verdict]:
    spec = ss.periodic_form(A)
    if spec is None:
        return None
    if prop is Prop.WEAKLY_PSMALL:
        return weakly_psmall_n(spec, n)
    if prop is Prop.NEAR_PSMALL:
        return near_psmall_n(spec, n)
    raise OracleError(f"{prop} is not indexed by n")


# -- brute force ----------------------------------------------------------------

COST_LIMIT = 5 * 10**7


class CostExceeded(OracleError):
    """The requested sweep does not fit the cost model; nothing was truncated."""


@dataclass(frozen=True)
class BruteResult:
    value: bool
    witness: object = None


def _cost_check(*factors: int) -> None:
    total = math.prod(factors)
    if total > COST_LIMIT:
        raise CostExceeded(f"brute-force sweep needs ~{total} steps (limit {COST_LIMIT})")


def brute_force(prop: Prop, A: ss.SubsetExpr, r: int, s: int, *, n: int = 1, core: int = 0,
                depth: Optional[int] = None, h: Optional[int] = None, y_size: int = 2) -> BruteResult:
    """Exhaustive bounded evaluation of ``prop`` on ``window(A, r)``.

    ``s`` is the search radius of the inner quantifiers.  Finiteness is read
    as "avoids the annulus ``core < |x| <= r - s``".  Parameters per property:

    * Thick: some ``ball(s) g`` inside ``A`` with ``g`` in ``ball(r - s)``; with
      ``depth``, every ``ball(j)``, ``j < depth``, has a shift in ``ball(s)``.
    * Large: ``ball(r - s)`` inside ``ball(s) A``; the witness is the first
      covering ``F`` in finite-set schedule order.
    * Prethick / Small: some ``ball(h) g`` inside ``ball(s) A``.
    * ExtraLarge: Small for the complement.
    * Thin: no ``g`` in ``ball(s)`` other than ``e`` makes ``gA & A`` meet the annulus.
    * Sparse: no ``Y`` containing ``e``, ``|Y| = y_size``, inside ``ball(s)``
      with every nonempty ``F`` in ``Y`` making the intersection of translates
      meet the annulus.
    * Scattered: no 2-generator piecewise shifted FP-set inside ``A`` on the
      annulus, generators and shifts in ``ball(s)``.
    * WeaklyPSmall / PSmall: ``n + 1`` translates (shifts in ``ball(s)``)
      pairwise disjoint on ``ball(r - s)``.  NearPSmall / AlmostPSmall: the
      same, disjoint on the annulus.
    """
    group = A.group
    if s > r:
        raise OracleError("search radius exceeds window radius")
    Ball = lambda q: gr.ball(group, q).elements
    mul, inv, wl = (lambda a, b: gr._mul(group, a, b)), (lambda a: gr._inv(group, a)), \
        (lambda a: gr.word_length(group, a))
    W = {x for x in Ball(r) if ss._member(A, x)}
    e = gr.identity(group)

    if prop is Prop.THICK:
        if depth is not None:
            shifts = []
            for j in range(depth):
                if j + s > r:
                    raise OracleError("window too small for the requested depth")
                H = Ball(j)
                _cost_check(len(H), len(Ball(s)))
                g = next((g for g in Ball(s) if all(mul(x, g) in W for x in H)), None)
                if g is None:
                    return BruteResult(False, j)
                shifts.append(g)
            return BruteResult(True, tuple(shifts))
        H = Ball(s)
        _cost_check(len(H), len(Ball(r - s)))
        g = next((g for g in Ball(r - s) if all(mul(x, g) in W for x in H)), None)
        return BruteResult(g is not None, g)

    if prop is Prop.LARGE:
        F = Ball(s)
        _cost_check(len(F), len(Ball(r - s)))
        covered = lambda fs, x: any(mul(inv(f), x) in W for f in fs)
        targets = Ball(r - s)
        ok = all(covered(F, x) for x in targets)
        if not ok:
            return BruteResult(False)
        if len(F) > 12:
            return BruteResult(True, frozenset(F))
        from .borel import schedule_finite_sets

        i = 0
        while True:
            cand = schedule_finite_sets(group, i)
            if cand <= set(F) and all(covered(cand, x) for x in targets):
                return BruteResult(True, cand)
            i += 1

    if prop in (Prop.PRETHICK, Prop.SMALL):
        hh = s if h is None else h
        F, H = Ball(s), Ball(hh)
        reach = r - s - hh
        if reach < 0:
            raise OracleError("window too small for prethick sweep")
        FA = {x for x in Ball(r - s) if any(mul(inv(f), x) in W for f in F)}
        _cost_check(len(H), len(Ball(reach)))
        g = next((g for g in Ball(reach) if all(mul(x, g) in FA for x in H)), None)
        pre = g is not None
        return BruteResult(pre if prop is Prop.PRETHICK else not pre, g)

    if prop is Prop.EXTRALARGE:
        res = brute_force(Prop.SMALL, ss.Complement(A), r, s, h=h)
        return res

    annulus = lambda x: core < wl(x) <= r - s
    if prop is Prop.THIN:
        _cost_check(len(Ball(s)), len(W))
        for g in Ball(s):
            if g == e:
                continue
            for x in W:
                if annulus(x) and mul(inv(g), x) in W:
                    return BruteResult(False, (g, x))
        return BruteResult(True)

    if prop is Prop.SPARSE:
        others = [g for g in Ball(s) if g != e]
        _cost_check(math.comb(len(others), y_size - 1), 2**y_size, len(W))
        for rest in itertools.combinations(others, y_size - 1):
            Y = (e,) + rest
            good_F = False
            for size in range(1, len(Y) + 1):
                for F in itertools.combinations(Y, size):
                    meet = [x for x in W if annulus(x)
                            and all(mul(inv(g), x) in W for g in F)]
                    if not meet:
                        good_F = True
                        break
                if good_F:
                    break
            if not good_F:
                return BruteResult(False, Y)
        return BruteResult(True)

    if prop is Prop.SCATTERED:
        S = sorted((x for x in W if annulus(x)), key=lambda x: gr.index_of(group, x))
        Sset = set(S)
        gens = Ball(s)
        _cost_check(len(gens), max(len(S), 1), len(gens))
        for g0 in gens:
            for x1 in S:
                x01 = mul(g0, x1)
                if x01 == x1 or x01 not in Sset:
                    continue
                g1 = next((g for g in gens if g != g0 and wl(mul(inv(g), x1)) <= s), None)
                x0 = next((x for x in S if x not in (x1, x01) and wl(mul(inv(g0), x)) <= s), None)
                if g1 is not None and x0 is not None:
                    from .fp import FPWitness

                    wit = FPWitness(group, (g0, g1), (mul(inv(g0), x0), mul(inv(g1), x1)))
                    return BruteResult(False, wit)
        return BruteResult(True)

    if prop in (Prop.WEAKLY_PSMALL, Prop.PSMALL, Prop.NEAR_PSMALL, Prop.ALMOST_PSMALL):
        exact = prop in (Prop.WEAKLY_PSMALL, Prop.PSMALL)
        region = (lambda x: wl(x) <= r - s) if exact else annulus
        cands = [g for g in Ball(s) if g != e]
        _cost_check(len(cands), len(W))
        tr = {g: frozenset(x for x in (mul(g, a) for a in W) if region(x)) for g in cands}
        tr[e] = frozenset(x for x in W if region(x))

        @functools.lru_cache(maxsize=None)
        def apart(a, b):
            return not (tr[a] & tr[b])

        steps = [0]

        def grow(chosen: tuple, pool: list):
            # pool: candidates after the last chosen one, compatible with all chosen
            if len(chosen) == n + 1:
                return chosen
            for i, g in enumerate(pool):
                if len(chosen) + len(pool) - i < n + 1:
                    return None
                steps[0] += 1
                if steps[0] > COST_LIMIT // 100:
                    raise CostExceeded("translate-family search exceeded the cost model")
                rest = [c for c in pool[i + 1:] if apart(g, c)]
                found = grow(chosen + (g,), rest)
                if found:
                    return found
            return None

        found = grow((e,), [g for g in cands if apart(e, g)])
        return BruteResult(found is not None, found)

    raise OracleError(f"no brute-force rule for {prop}")


# -- periodic validation ---------------------------------------------------------

def validation_cases(spec: PeriodicSpec, k: int) -> list:
    """``(prop, n, brute kwargs)`` sweeps that decide ``prop`` exactly for
    ``spec`` once the window extends ``k >= 2`` periods past the radii the
    inner quantifiers need.  ``n`` is None for the aggregate properties."""
    if k < 2:
        raise OracleError("validation needs at least two extra periods")
    P = spec.period
    w = len(spec.center)
    C = max(abs(spec.lo), abs(spec.hi)) + 1
    S = 2 * P + w + 1
    cases = []
    win = lambda s, extra=0: C + 2 * s + extra + k * P
    cases.append((Prop.THICK, None, dict(s=S, r=win(S))))
    cases.append((Prop.LARGE, None, dict(s=S, r=win(S))))
    hh = w + P + 1
    for p in (Prop.PRETHICK, Prop.SMALL):
        cases.append((p, None, dict(s=P, h=hh, r=C + 2 * hh + 4 * P + k * P)))
    cases.append((Prop.EXTRALARGE, None, dict(s=P, h=hh, r=C + 2 * hh + 4 * P + k * P)))
    cases.append((Prop.THIN, None, dict(s=P, core=C, r=C + P + k * P)))
    cases.append((Prop.SPARSE, None, dict(s=P, core=C, r=C + P + k * P)))
    sc = C + 2 * P
    cases.append((Prop.SCATTERED, None, dict(s=sc, core=C, r=3 * sc + k * P)))
    for n in range(1, min(P, 4) + 1):
        sw = (n + 1) * (w + 3 * P + 1) + C
        cases.append((Prop.WEAKLY_PSMALL, n, dict(s=sw, n=n, r=C + 2 * sw + k * P)))
        cases.append((Prop.NEAR_PSMALL, n, dict(s=sw, n=n, core=C + sw, r=C + 2 * sw + k * P + sw)))
    sw = (P + 2) * (w + 1) + C + 2 * P
    for p in (Prop.WEAKLY_PSMALL, Prop.PSMALL):
        cases.append((p, None, dict(s=sw, n=P, r=C + 2 * sw + k * P)))
    for p in (Prop.NEAR_PSMALL, Prop.ALMOST_PSMALL):
        cases.append((p, None, dict(s=sw, n=P, core=C + sw, r=C + 2 * sw + k * P + sw)))
    return cases


def oracle_expected(spec: PeriodicSpec, prop: Prop, n: Optional[int]) -> Verdict:
    if n is None:
        return classify_periodic(spec)[prop]
    return weakly_psmall_n(spec, n) if prop is Prop.WEAKLY_PSMALL else near_psmall_n(spec, n)


def validate_periodic(spec: PeriodicSpec, k: int) -> list:
    """``(prop, n, oracle value, brute value)`` for every validation sweep."""
    A = ss.EventuallyPeriodic(spec)
    rows = []
    for prop, n, kw in validation_cases(spec, k):
        expected = oracle_expected(spec, prop, n)
        got = brute_force(prop, A, **kw)
        rows.append((prop, n, expected.value, TV.of(got.value)))
    return rows
