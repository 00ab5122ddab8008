"""Checkers for the size families.

Each family has a Borel tree (evaluated by :mod:`groupsize.borel`) or a
direct bounded search, plus the sound sources of Global verdicts: oracle
rules, structural finiteness, the hard-coded rules for finite groups, and
promotion along the implication order.  Every decided verdict carries a
certificate whose ``check(A)`` re-derives it from fresh data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Optional

from . import groups as gr
from . import oracle as orc
from . import subsets as ss
from .borel import (
    GLOBAL, TO_DEPTH, TV, BallSchedule, Budget, CountableIntersection, CountableUnion,
    ElementSchedule, Leaf, Schedule, Verdict, evaluate, replay, schedule_finite_sets, tamper,
    unknown,
)
from .fp import FPError, FPWitness, contains_pws_fp
from .groups import Group
from .tags import IMPLICATIONS, Prop


class InconsistencyError(RuntimeError):
    """Two Global verdicts contradict each other.  Never expected to fire."""


# -- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class TreeCertificate:
    tree: Any
    path: Any
    value: TV

    def check(self, A) -> bool:
        return replay(Verdict(self.value, path=self.path), self.tree, A)

    def tampered(self):
        return replace(self, path=tamper(self.path))


@dataclass(frozen=True)
class RuleCert:
    """Wraps an oracle rule certificate; the rule is recomputed on check."""

    inner: orc.RuleCertificate

    def check(self, A) -> bool:
        return self.inner.check()

    def tampered(self):
        return RuleCert(replace(self.inner, expected=not self.inner.expected))


@dataclass(frozen=True)
class StructuralCert:
    """A claim recomputed from ``A`` by a structural (window-free) procedure."""

    what: str
    recompute: Callable[[Any], bool] = field(compare=False)
    expected: bool = True

    def check(self, A) -> bool:
        return bool(self.recompute(A)) == self.expected

    def tampered(self):
        return replace(self, expected=not self.expected)


@dataclass(frozen=True)
class FamilyCert:
    """Translates ``g A`` for ``g`` in ``shifts`` pairwise disjoint on the
    region ``core < |x| <= radius`` (``core = -1``: the whole ball)."""

    shifts: tuple
    radius: int
    core: int = -1

    def check(self, A) -> bool:
        if len(set(self.shifts)) != len(self.shifts):
            return False
        return _family_ok(A, self.shifts, self.radius, self.core)

    def tampered(self):
        return replace(self, shifts=self.shifts + self.shifts[-1:])


@dataclass(frozen=True)
class FPCert:
    witness: FPWitness

    def check(self, A) -> bool:
        try:
            return self.witness.check(lambda x: ss.member(A, x))
        except (FPError, ValueError):
            return False

    def tampered(self):
        w = self.witness
        return FPCert(replace(w, generators=(w.generators[0],) * w.k))


@dataclass(frozen=True)
class SparseCert:
    """Outcome of the bounded sparse refuter search, recomputed on check."""

    budget: Budget
    value: TV
    refuter: Optional[tuple] = None

    def check(self, A) -> bool:
        v, Y = _sparse_search(A, self.budget)
        return v is self.value and Y == self.refuter

    def tampered(self):
        return replace(self, value=~self.value)


@dataclass(frozen=True)
class NegatedCert:
    inner: Any

    def check(self, A) -> bool:
        return self.inner.check(A)

    def tampered(self):
        return NegatedCert(self.inner.tampered())


@dataclass(frozen=True)
class ComplementCert:
    """The inner certificate speaks about the complement of ``A``."""

    inner: Any

    def check(self, A) -> bool:
        return self.inner.check(ss.Complement(A))

    def tampered(self):
        return ComplementCert(self.inner.tampered())


@dataclass(frozen=True)
class PromotionCert:
    """Derived along an implication from a verdict about another property."""

    rule: str
    premise: Any

    def check(self, A) -> bool:
        return self.premise.check(A)

    def tampered(self):
        return replace(self, premise=self.premise.tampered())


@dataclass(frozen=True)
class AllCert:
    parts: tuple

    def check(self, A) -> bool:
        return all(p.check(A) for p in self.parts)

    def tampered(self):
        return AllCert((self.parts[0].tampered(),) + self.parts[1:])


def replay_verdict(v: Verdict, A) -> bool:
    """Re-derive a decided verdict from its certificate."""
    if v.value is TV.UNKNOWN or v.certificate is None:
        raise ValueError("nothing to replay")
    try:
        return bool(v.certificate.check(A))
    except (ss.LocalityError, ValueError, IndexError, TypeError, KeyError):
        return False


def tamper_verdict(v: Verdict) -> Verdict:
    return replace(v, certificate=v.certificate.tampered())


def _family_ok(A, shifts, radius: int, core: int) -> bool:
    group = A.group
    region = [x for x in gr.ball(group, radius).elements if gr.word_length(group, x) > core]
    for g, h in itertools.combinations(shifts, 2):
        gi, hi = gr._inv(group, g), gr._inv(group, h)
        for x in region:
            if ss._member(A, gr._mul(group, gi, x)) and ss._member(A, gr._mul(group, hi, x)):
                return False
    return True


# -- leaves and trees --------------------------------------------------------------

def check_T(F, H, A) -> bool:
    """``H <= F A``: every ``h`` in ``H`` has some ``f`` in ``F`` with ``f^-1 h`` in ``A``."""
    return _T_pred(ss.LocalView(A, _T_support((frozenset(F), frozenset(H)), A.group)),
                   (frozenset(F), frozenset(H)))


def _T_pred(view, params) -> bool:
    F, H = params
    g = view.group
    return all(any(gr._mul(g, gr._inv(g, f), h) in view for f in F) for h in H)


def _T_support(params, group) -> int:
    F, H = params
    return max((gr.word_length(group, gr._mul(group, gr._inv(group, f), h))
                for f in F for h in H), default=0)


def _T_leaf(group: Group, F, H) -> Leaf:
    return Leaf("T", (frozenset(F), frozenset(H)), _T_pred, lambda p: _T_support(p, group))


def _X_pred(view, params) -> bool:
    F, g, radius = params
    group = view.group
    for a in gr.ball(group, radius).elements:
        if a not in F and a in view and gr._mul(group, g, a) in view:
            return False
    return True


def _X_leaf(group: Group, F, g, radius: int) -> Leaf:
    return Leaf("X", (F, g, radius), _X_pred, lambda p: p[2] + gr.word_length(group, p[1]))


@dataclass(frozen=True)
class NonEmptyFiniteSets(Schedule):
    """Finite-set schedule with the empty set dropped (``0 -> {e}``)."""

    group: Group

    @property
    def size(self):
        return 2 ** self.group.order - 1 if self.group.is_finite else None

    def item(self, i: int) -> frozenset:
        return schedule_finite_sets(self.group, i + 1)


def _thick_with(group: Group, F: frozenset):
    return CountableIntersection(
        "H", BallSchedule(group),
        lambda H: CountableUnion(
            "g", ElementSchedule(group),
            lambda g: _T_leaf(group, F, frozenset(gr._mul(group, h, g) for h in H))))


_trees: dict = {}


def _cached(key, build):
    if key not in _trees:
        _trees[key] = build()
    return _trees[key]


def tree_thick(group: Group):
    """Intersection over balls ``H`` of the union over ``g`` of ``Hg <= A``."""
    e = gr.identity(group)
    return _cached(("thick", group), lambda: _thick_with(group, frozenset({e})))


def tree_large(group: Group):
    """Union over finite ``F`` of the intersection over balls ``H`` of ``H <= FA``."""
    return _cached(("large", group), lambda: CountableUnion(
        "F", NonEmptyFiniteSets(group),
        lambda F: CountableIntersection(
            "H", BallSchedule(group), lambda H: _T_leaf(group, F, H))))


def tree_prethick(group: Group):
    """Union over finite ``F`` of "``FA`` is thick"."""
    return _cached(("prethick", group), lambda: CountableUnion(
        "F", NonEmptyFiniteSets(group), lambda F: _thick_with(group, F)))


def tree_thin(group: Group, radius: int):
    """Intersection over ``g != e`` of the union over balls ``F`` of
    "no ``a`` in ``A`` outside ``F`` with ``|a| <= radius`` has ``ga`` in ``A``".

    Balls are cofinal among finite sets and the leaf is monotone in ``F``,
    so the ball chain loses nothing against the full finite-set schedule.
    """
    return _cached(("thin", group, radius), lambda: CountableIntersection(
        "g", ElementSchedule(group, skip_identity=True),
        lambda g: CountableUnion(
            "F", BallSchedule(group), lambda F: _X_leaf(group, F, g, radius))))


# -- bounded searches ----------------------------------------------------------------

WINDOW_CAP = 20000  # elements in a materialised window
POOL_CAP = 32  # candidate elements for the sparse refuter search
FP_STEPS = 200000


def effective_radius(group: Group, r: int, cap: int = WINDOW_CAP) -> int:
    """Largest radius ``<= r`` whose ball has at most ``cap`` elements."""
    rho = 0
    while rho < r and gr.ball_size(group, rho + 1) <= cap:
        rho += 1
    return rho


def _pool(group: Group, s: int) -> list:
    rho = effective_radius(group, s, POOL_CAP + 1)
    return [g for g in gr.ball(group, rho).elements if g != gr.identity(group)]


def _sparse_search(A, budget: Budget):
    """Refuter search: ``Y`` containing ``e`` with ``|Y| = y_size`` from a
    small ball, such that every nonempty ``F <= Y`` leaves at least ``r/4``
    points of the intersection of the translates ``gA`` (``g`` in ``F``)
    inside ``ball(r)``.  Returns ``(False, Y)`` for a refuter, ``(True, None)``
    when every candidate admits a good ``F``."""
    group = A.group
    r = effective_radius(group, budget.radius)
    elems = gr.ball(group, r).elements
    e = gr.identity(group)
    pool = _pool(group, budget.search_radius)

    def mask(g) -> int:
        gi = gr._inv(group, g)
        m = 0
        for i, x in enumerate(elems):
            if ss._member(A, gr._mul(group, gi, x)):
                m |= 1 << i
        return m

    masks = {g: mask(g) for g in [e] + pool}
    threshold = r / 4
    size = min(budget.y_size, len(pool) + 1)
    for rest in itertools.combinations(pool, size - 1):
        Y = (e,) + rest
        bad = True
        for n in range(1, size + 1):
            for F in itertools.combinations(Y, n):
                m = -1
                for g in F:
                    m &= masks[g]
                if bin(m).count("1") < threshold:
                    bad = False
                    break
            if not bad:
                break
        if bad:
            return TV.FALSE, Y
    return TV.TRUE, None


def _family_search(A, n: int, budget: Budget, near: bool):
    """``n + 1`` translates (``e`` first) pairwise disjoint on the window,
    or on its outer part for ``near``.  Returns ``(shifts, exhaustive, cert)``."""
    group = A.group
    r = effective_radius(group, budget.radius)
    s = min(budget.search_radius, r)
    core = min(2 * s, r - s - 1) if near else 0
    prop = Prop.NEAR_PSMALL if near else Prop.WEAKLY_PSMALL
    res = orc.brute_force(prop, A, r, s, n=n, core=core)
    region_core = core if near else -1
    exhaustive = group.is_finite and r - s >= gr.max_radius(group) and s >= gr.max_radius(group)
    if res.value:
        return res.witness, exhaustive, FamilyCert(tuple(res.witness), r - s, region_core)
    return None, exhaustive, None


def _exactly_disjoint(A, shifts) -> bool:
    """Structural proof that the translates are pairwise disjoint."""
    for g, h in itertools.combinations(shifts, 2):
        X = ss.Intersection(ss.translate(g, A), ss.translate(h, A))
        f = ss.finiteness(X)
        if not (f.finite and f.bound == 0):
            spec = ss.periodic_form(X) if A.group.kind == gr.INTEGER else None
            if spec is None or not (spec.is_finite() and spec.cardinality() == 0):
                return False
    return True


def _greedy(A, budget: Budget, exact: bool):
    """Injective ``g_0 = e, g_1, ...`` of length ``n_max + 1`` in schedule
    order, pairwise disjoint (``exact``) or disjoint on the outer half of the
    window; one level of backtracking."""
    group = A.group
    r = effective_radius(group, budget.radius)
    s = min(budget.search_radius, r)
    core = -1 if exact else max((r - s) // 2, 0)
    target = budget.n_max + 1
    e = gr.identity(group)
    cands = [g for g in gr.ball(group, s).elements if g != e]
    W = [x for x in gr.ball(group, r).elements if ss._member(A, x)]
    region = lambda x: core < gr.word_length(group, x) <= r - s
    tr = {g: frozenset(y for y in (gr._mul(group, g, a) for a in W) if region(y))
          for g in [e] + cands}
    ok = lambda g, h: not (tr[g] & tr[h])

    def run(banned):
        seq = [e]
        for g in cands:
            if len(seq) == target:
                break
            if g not in banned and all(ok(g, h) for h in seq):
                seq.append(g)
        return seq

    seq = run(set())
    if len(seq) < target and len(seq) > 1:
        alt = run({seq[-1]})
        if len(alt) > len(seq):
            seq = alt
    if len(seq) == target:
        return tuple(seq), FamilyCert(tuple(seq), r - s, core)
    return None, None


# -- verdict sources -------------------------------------------------------------------

ALL_PROPS = tuple(Prop)
SMALL_SIDE = (Prop.SMALL, Prop.THIN, Prop.SPARSE, Prop.SCATTERED, Prop.PSMALL,
              Prop.WEAKLY_PSMALL, Prop.ALMOST_PSMALL, Prop.NEAR_PSMALL)
LARGE_SIDE = (Prop.LARGE, Prop.THICK, Prop.PRETHICK, Prop.EXTRALARGE)


def _g(value: bool, cert, source: str, note: str) -> Verdict:
    return Verdict(TV.of(value), GLOBAL, None, None, source, note, cert)


def _tree_verdict(tree, A, budget: Budget) -> Verdict:
    v = evaluate(tree, A, budget)
    if v.value is TV.UNKNOWN:
        return v
    return replace(v, certificate=TreeCertificate(tree, v.path, v.value))


def _is_finite(A) -> bool:
    return ss.finiteness(A).finite


def _is_cofinite(A) -> bool:
    if isinstance(A, ss.Complement):
        return ss.finiteness(A.child).finite
    return ss.finiteness(ss.Complement(A)).finite


def finite_group_rules(A) -> dict:
    """Hard-coded verdicts in a finite group, where every subset is finite.

    ``F = G`` makes any nonempty set large and prethick; only ``G`` itself
    is thick or extralarge; only the empty set is small.  The families
    defined through finiteness of intersections hold vacuously.
    """
    group = A.group
    size = ss.finiteness(A).bound
    nonempty = StructuralCert("nonempty", lambda X: ss.finiteness(X).bound > 0, size > 0)
    whole = StructuralCert("whole group", lambda X: ss.finiteness(X).bound == X.group.order,
                           size == group.order)
    vac = StructuralCert("finite group", lambda X: X.group.is_finite, True)
    out = {
        Prop.LARGE: _g(size > 0, nonempty, "rule", "F = G covers"),
        Prop.PRETHICK: _g(size > 0, nonempty, "rule", "F = G covers"),
        Prop.SMALL: _g(size == 0, NegatedCert(nonempty), "rule", "only the empty set"),
        Prop.THICK: _g(size == group.order, whole, "rule", "only G"),
        Prop.EXTRALARGE: _g(size == group.order, whole, "rule", "only G"),
    }
    for p in SMALL_SIDE[1:]:
        out[p] = _g(True, vac, "rule", "vacuous in a finite group")
    return out


def _structural(A, prop: Prop, budget: Budget) -> Optional[Verdict]:
    """Finite / cofinite sets, and translates meeting ``A`` in an infinite set."""
    if _is_finite(A):
        cert = StructuralCert("finite", _is_finite, True)
        return _g(prop in SMALL_SIDE, cert, "structural", "finite set")
    if _is_cofinite(A):
        cert = StructuralCert("cofinite", _is_cofinite, True)
        return _g(prop in LARGE_SIDE, cert, "structural", "finite complement")
    if prop is Prop.THIN:
        group = A.group
        for g in gr.ball(group, effective_radius(group, budget.search_radius, 4096)).elements:
            if g == gr.identity(group):
                continue
            meet = lambda X, g=g: ss.finiteness(ss.Intersection(ss.translate(g, X), X)).infinite
            if meet(A):
                note = f"gA & A infinite for g={gr.format_element(group, g)}"
                return _g(False, StructuralCert(note, meet, True), "structural", note)
    return None


# subsets inherit these when they hold, supersets inherit their failure
DOWNWARD = SMALL_SIDE
# supersets inherit these when they hold
UPWARD = LARGE_SIDE


_rules_memo: dict = {}


def _rule_table(A, budget: Budget) -> dict:
    """Global verdicts from oracle, structural and hereditary rules only."""
    key = (A, budget)
    if key not in _rules_memo:
        _rules_memo[key] = _compute_rules(A, budget)
    return _rules_memo[key]


def _compute_rules(A, budget: Budget) -> dict:
    out = {}
    for p in ALL_PROPS:
        vs = []
        ov = _oracle(A).get(p)
        if ov is not None:
            vs.append(ov)
        sv = _structural(A, p, budget)
        if sv is not None:
            vs.append(sv)
        hv = _hereditary(A, p, budget)
        if hv is not None:
            vs.append(hv)
        if vs:
            out[p] = _agree(vs, f"{ss.describe(A)}: {p}")
    return out


def _hereditary(A, prop: Prop, budget: Budget) -> Optional[Verdict]:
    """``X & Y`` lies inside both children and ``X | Y`` contains both.  The
    small-side families are closed under subsets and the large-side ones
    under supersets."""
    if isinstance(A, ss.Intersection):
        inside = prop in DOWNWARD
    elif isinstance(A, ss.Union):
        inside = prop in UPWARD
    else:
        return None
    # Intersection: child True (downward) or child False (upward) transfers;
    # Union: child True (upward) or child False (downward) transfers.
    want = TV.TRUE if inside else TV.FALSE
    for side, child in (("left", A.left), ("right", A.right)):
        v = _rule_table(child, budget).get(prop)
        if v is not None and v.value is want:
            cert = PromotionCert(f"{'inside' if isinstance(A, ss.Intersection) else 'contains'} {side}",
                                 _ChildCert(side, v.certificate))
            return _g(want is TV.TRUE, cert, "hereditary", f"{side} operand is {prop}: {want}")
    return None


@dataclass(frozen=True)
class _ChildCert:
    side: str
    inner: Any

    def check(self, A) -> bool:
        return self.inner.check(getattr(A, self.side))

    def tampered(self):
        return _ChildCert(self.side, self.inner.tampered())


def _oracle(A) -> dict:
    try:
        table = orc.oracle_verdicts(A)
    except orc.OracleError:
        return {}
    out = {}
    for p, v in (table or {}).items():
        if v.value is not TV.UNKNOWN:
            out[p] = replace(v, certificate=RuleCert(v.certificate))
    return out


def _weakly_n(A, n: int, budget: Budget) -> Verdict:
    """Indexed weakly-P-small verdict without the aggregate machinery."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return _g(True, StructuralCert("one translate", lambda X: True), "rule", "a single translate")
    globals_ = []
    try:
        ov = orc.oracle_psmall_n(A, Prop.WEAKLY_PSMALL, n)
    except orc.OracleError:
        ov = None
    if ov is not None and ov.value is not TV.UNKNOWN:
        globals_.append(replace(ov, certificate=RuleCert(ov.certificate)))
    if not A.group.is_finite:
        sv = _structural(A, Prop.WEAKLY_PSMALL, budget)
        if sv is not None:
            globals_.append(sv)
    try:
        shifts, exhaustive, cert = _family_search(A, n, budget, near=False)
    except orc.CostExceeded:
        shifts, exhaustive, cert = None, False, None
    if shifts is not None and (exhaustive or _exactly_disjoint(A, shifts)):
        globals_.append(_g(True, cert, "search", "translates disjoint everywhere"))
    elif shifts is None and exhaustive:
        cert = StructuralCert(f"no {n + 1} disjoint translates",
                              lambda X, n=n: _family_search(X, n, budget, False)[0] is None)
        globals_.append(_g(False, cert, "search", "exhaustive over the finite group"))
    if globals_:
        v = _agree(globals_, f"WeaklyPSmall[{n}]")
        return replace(v, path=shifts) if v.value is TV.TRUE and shifts is not None else v
    if shifts is not None:
        return Verdict(TV.TRUE, TO_DEPTH, budget, shifts, "search", "window-disjoint", cert)
    return unknown(budget, "no family in the search ball", "search")


def _near_n(A, n: int, budget: Budget) -> Verdict:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0 or A.group.is_finite:
        return _g(True, StructuralCert("trivial", lambda X: True), "rule",
                  "a single translate" if n == 0 else "vacuous in a finite group")
    globals_ = []
    try:
        ov = orc.oracle_psmall_n(A, Prop.NEAR_PSMALL, n)
    except orc.OracleError:
        ov = None
    if ov is not None and ov.value is not TV.UNKNOWN:
        globals_.append(replace(ov, certificate=RuleCert(ov.certificate)))
    sv = _structural(A, Prop.NEAR_PSMALL, budget)
    if sv is not None:
        globals_.append(sv)
    if globals_:
        return _agree(globals_, f"NearPSmall[{n}]")
    try:
        shifts, _, cert = _family_search(A, n, budget, near=True)
    except orc.CostExceeded:
        return unknown(budget, "cost", "search")
    if shifts is not None:
        return Verdict(TV.TRUE, TO_DEPTH, budget, shifts, "search", "disjoint off the core", cert)
    return unknown(budget, "no family in the search ball", "search")


def _agree(vs: list, what: str) -> Verdict:
    values = {v.value for v in vs}
    if len(values) > 1:
        detail = "; ".join(f"{v.source}:{v.value}({v.note})" for v in vs)
        raise InconsistencyError(f"{what}: contradicting Global verdicts: {detail}")
    return vs[0]


def _conjunction(vs: list, budget: Budget) -> Verdict:
    for v in vs:
        if v.value is TV.FALSE:
            return v
    if any(v.value is TV.UNKNOWN for v in vs):
        return unknown(budget, "some n undecided", "search")
    return Verdict(TV.TRUE, TO_DEPTH, budget, None, "search", f"all n <= {len(vs)}",
                   AllCert(tuple(v.certificate for v in vs)))


def _base_evidence(A, prop: Prop, budget: Budget) -> Verdict:
    """Bounded evidence from trees and searches (no Global sources)."""
    group = A.group
    if prop is Prop.THICK:
        return _tree_verdict(tree_thick(group), A, budget)
    if prop is Prop.LARGE:
        return _tree_verdict(tree_large(group), A, budget)
    if prop is Prop.PRETHICK:
        return _tree_verdict(tree_prethick(group), A, budget)
    if prop is Prop.SMALL:
        v = _tree_verdict(tree_prethick(group), A, budget)
        return v if v.value is TV.UNKNOWN else replace(
            v.negated(), certificate=NegatedCert(v.certificate))
    if prop is Prop.THIN:
        return _tree_verdict(tree_thin(group, effective_radius(group, budget.radius)), A, budget)
    if prop is Prop.SPARSE:
        # only refutations are reported: "every candidate Y has a good F" on
        # one window is not evidence that survives larger windows
        value, Y = _sparse_search(A, budget)
        if value is TV.TRUE:
            return unknown(budget, "no refuter in the search ball", "search")
        return Verdict(value, TO_DEPTH, budget, Y, "search", "refuter", SparseCert(budget, value, Y))
    if prop is Prop.SCATTERED:
        rho = effective_radius(group, budget.search_radius, 64)
        try:
            w = contains_pws_fp(A, budget.k, rho, max_steps=FP_STEPS)
        except FPError:
            return unknown(budget, "steps", "search")
        if w is None:
            return unknown(budget, "no shifted FP-set in the search ball", "search")
        return Verdict(TV.FALSE, TO_DEPTH, budget, w, "search", "shifted FP-set found", FPCert(w))
    if prop in (Prop.PSMALL, Prop.ALMOST_PSMALL):
        seq, cert = _greedy(A, budget, exact=prop is Prop.PSMALL)
        if seq is None:
            return unknown(budget, "greedy search stalled", "search")
        return Verdict(TV.TRUE, TO_DEPTH, budget, seq, "search", "greedy sequence", cert)
    if prop is Prop.WEAKLY_PSMALL:
        return _conjunction([_weakly_n(A, n, budget) for n in range(1, budget.n_max + 1)], budget)
    if prop is Prop.NEAR_PSMALL:
        return _conjunction([_near_n(A, n, budget) for n in range(1, budget.n_max + 1)], budget)
    raise ValueError(f"no evidence procedure for {prop}")


# -- classification ----------------------------------------------------------------------

# thin sets meet each translate finitely, so distinct translates meet finitely
EXTRA_IMPLICATIONS = ((Prop.THIN, Prop.ALMOST_PSMALL),)


def _base(A, prop: Prop, budget: Budget, cross_check: bool, complement_small=None) -> Verdict:
    if A.group.is_finite:
        return replace(finite_group_rules(A)[prop], budget=budget)
    globals_ = []
    rv = _rule_table(A, budget).get(prop)
    if rv is not None:
        globals_.append(rv)
    if complement_small is not None and complement_small.is_global:
        globals_.append(replace(complement_small, certificate=ComplementCert(complement_small.certificate),
                                note=f"complement small: {complement_small.note}"))
    if globals_ and not cross_check:
        return replace(_agree(globals_, str(prop)), budget=budget)
    if prop is Prop.EXTRALARGE:
        ev = complement_small if complement_small is not None else unknown(budget)
        if ev.value is not TV.UNKNOWN and not ev.is_global:
            ev = replace(ev, certificate=ComplementCert(ev.certificate))
    else:
        ev = _base_evidence(A, prop, budget)
    if ev.is_global:
        globals_.append(ev)
    if globals_:
        return replace(_agree(globals_, str(prop)), budget=budget)
    return replace(ev, budget=budget)


def _promote(vs: dict, infinite: bool, what: str) -> dict:
    """Push Global verdicts along the implications to a fixpoint."""
    rules = list(IMPLICATIONS) + (list(EXTRA_IMPLICATIONS) if infinite else [])
    changed = True
    while changed:
        changed = False
        for p, q in rules:
            vp, vq = vs[p], vs[q]
            if vp.is_global and vq.is_global and vp.value is TV.TRUE and vq.value is TV.FALSE:
                raise InconsistencyError(f"{what}: {p} holds but {q} fails")
            if vp.is_global and vp.value is TV.TRUE and not vq.is_global:
                vs[q] = _g(True, PromotionCert(f"{p} => {q}", vp.certificate), "promotion", f"from {p}")
                changed = True
            elif vq.is_global and vq.value is TV.FALSE and not vp.is_global:
                vs[p] = _g(False, PromotionCert(f"not {q} => not {p}", vq.certificate),
                           "promotion", f"from not {q}")
                changed = True
        sm, pt = vs[Prop.SMALL], vs[Prop.PRETHICK]
        if sm.is_global and pt.is_global and sm.value is pt.value:
            raise InconsistencyError(f"{what}: small and prethick agree")
        for a, b in ((Prop.SMALL, Prop.PRETHICK), (Prop.PRETHICK, Prop.SMALL)):
            va, vb = vs[a], vs[b]
            if va.is_global and not vb.is_global:
                vs[b] = _g(va.value is TV.FALSE, PromotionCert(f"{b} = not {a}", NegatedCert(va.certificate)),
                           "promotion", f"negation of {a}")
                changed = True
    return vs


@dataclass(frozen=True)
class ClassificationReport:
    name: str
    verdicts: dict
    budget: Budget
    finite_group: bool = False

    @property
    def consistency(self) -> list:
        """``(relation, status)`` recomputed from the verdicts:
        ``ok`` / ``contradiction`` / ``undecided``, or ``n/a`` for the
        small-side chain in a finite group, where it does not apply."""
        out = []
        v = self.verdicts
        pairs = [(p, q) for p, q in IMPLICATIONS if p in v and q in v]
        for p, q in pairs:
            a, b = v[p], v[q]
            if self.finite_group and q is Prop.SMALL:
                out.append((f"{p} => {q}", "n/a"))
            elif a.is_global and b.is_global:
                bad = a.value is TV.TRUE and b.value is TV.FALSE
                out.append((f"{p} => {q}", "contradiction" if bad else "ok"))
            else:
                out.append((f"{p} => {q}", "undecided"))
        if Prop.SMALL in v and Prop.PRETHICK in v:
            a, b = v[Prop.SMALL], v[Prop.PRETHICK]
            if a.is_global and b.is_global:
                out.append(("Small = not Prethick", "ok" if a.value is not b.value else "contradiction"))
            else:
                out.append(("Small = not Prethick", "undecided"))
        return out

    @property
    def consistent(self) -> bool:
        return all(status != "contradiction" for _, status in self.consistency)


_memo: dict = {}


def _classify_all(A, budget: Budget, cross_check: bool, with_extralarge: bool = True) -> dict:
    key = (A, budget, cross_check, with_extralarge)
    if key in _memo:
        return _memo[key]
    comp = None
    if with_extralarge and not A.group.is_finite:
        comp = _classify_all(ss.Complement(A), budget, cross_check, False)[Prop.SMALL]
    vs = {}
    for p in ALL_PROPS:
        if p is Prop.EXTRALARGE and not with_extralarge:
            vs[p] = unknown(budget, "not computed")
            continue
        vs[p] = _base(A, p, budget, cross_check, comp if p is Prop.EXTRALARGE else None)
    if not A.group.is_finite:
        vs = _promote(vs, True, ss.describe(A))
    vs = {p: replace(v, budget=budget) for p, v in vs.items()}
    _memo[key] = vs
    return vs


def classify(A, budget: Budget = Budget(), props=None, name: str = "", cross_check: bool = False
             ) -> ClassificationReport:
    vs = _classify_all(A, budget, cross_check)
    if props is not None:
        vs = {p: vs[p] for p in props}
    return ClassificationReport(name or ss.describe(A), vs, budget, A.group.is_finite)


def _check(prop):
    def run(A, budget: Budget = Budget()) -> Verdict:
        return _classify_all(A, budget, False)[prop]
    run.__name__ = f"check_{prop.name.lower()}"
    run.__doc__ = f"{prop} verdict for ``A`` (trees, searches, rules and promotions)."
    return run


check_large = _check(Prop.LARGE)
check_extralarge = _check(Prop.EXTRALARGE)
check_small = _check(Prop.SMALL)
check_thick = _check(Prop.THICK)
check_prethick = _check(Prop.PRETHICK)
check_thin = _check(Prop.THIN)
check_sparse = _check(Prop.SPARSE)
check_scattered = _check(Prop.SCATTERED)
check_psmall = _check(Prop.PSMALL)
check_almost_psmall = _check(Prop.ALMOST_PSMALL)


def check_weakly_psmall(A, n: Optional[int] = None, budget: Budget = Budget()) -> Verdict:
    """Weakly P-small for ``n`` (``n + 1`` pairwise disjoint translates), or
    the aggregate verdict when ``n`` is None."""
    if n is None:
        return _classify_all(A, budget, False)[Prop.WEAKLY_PSMALL]
    if A.group.is_finite or n == 0:
        return replace(_weakly_n(A, n, budget), budget=budget)
    agg = _classify_all(A, budget, False)[Prop.WEAKLY_PSMALL]
    v = _weakly_n(A, n, budget)
    if not v.is_global and agg.is_global and agg.value is TV.TRUE:
        v = _g(True, PromotionCert("aggregate => every n", agg.certificate), "promotion", "aggregate")
    return replace(v, budget=budget)


def check_near_psmall(A, n: Optional[int] = None, budget: Budget = Budget()) -> Verdict:
    if n is None:
        return _classify_all(A, budget, False)[Prop.NEAR_PSMALL]
    v = _near_n(A, n, budget)
    if not v.is_global:
        agg = _classify_all(A, budget, False)[Prop.NEAR_PSMALL]
        if agg.is_global and agg.value is TV.TRUE:
            v = _g(True, PromotionCert("aggregate => every n", agg.certificate), "promotion", "aggregate")
    return replace(v, budget=budget)
