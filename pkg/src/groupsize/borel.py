"""Depth-bounded three-valued evaluation of countable union/intersection trees.

Leaves are local predicates: each declares a support radius and is decided
exactly by reading ``A`` on ``ball(support)``.  Countable nodes explore a
finite prefix of their index schedule, so their verdicts are scoped
``ToDepth`` unless the schedule is finite and fully explored:

* a union is True once an explored child is True (witness: its index path),
  False only if a finite schedule is exhausted with every child False;
* an intersection is False once an explored child is False (refuter), and
  True when every explored child is True; that True is ``ToDepth`` evidence
  unless the schedule was finite and exhausted.
"""

from __future__ import annotations

import enum
import itertools
import threading
from dataclasses import dataclass, field, fields, replace
from typing import Any, Callable, Optional, Union as TUnion

from . import groups as gr
from .groups import Group
from .subsets import LocalView, SubsetExpr, WindowView, window


class TV(enum.Enum):
    TRUE = "True"
    FALSE = "False"
    UNKNOWN = "Unknown"

    def __invert__(self) -> "TV":
        return {TV.TRUE: TV.FALSE, TV.FALSE: TV.TRUE}.get(self, TV.UNKNOWN)

    @classmethod
    def of(cls, b: bool) -> "TV":
        return cls.TRUE if b else cls.FALSE

    def __str__(self):
        return self.value


GLOBAL = "Global"
TO_DEPTH = "ToDepth"


@dataclass(frozen=True)
class Budget:
    union_width: int = 8
    intersection_depth: int = 4
    support_cap: int = 4096
    radius: int = 64
    search_radius: int = 8
    n_max: int = 4
    k: int = 3
    y_size: int = 3

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) < 1:
                raise ValueError(f"budget field {f.name} must be positive")

    def __le__(self, other: "Budget") -> bool:
        return all(getattr(self, f.name) <= getattr(other, f.name) for f in fields(self))

    def short(self) -> str:
        return (
            f"w{self.union_width}d{self.intersection_depth}c{self.support_cap}"
            f"r{self.radius}s{self.search_radius}n{self.n_max}k{self.k}y{self.y_size}"
        )


@dataclass(frozen=True)
class Verdict:
    value: TV
    scope: str = TO_DEPTH
    budget: Optional[Budget] = None
    path: Any = None
    source: str = "tree"
    note: str = ""
    certificate: Any = None

    @property
    def is_global(self) -> bool:
        return self.scope == GLOBAL and self.value is not TV.UNKNOWN

    def negated(self) -> "Verdict":
        return replace(self, value=~self.value)

    def __str__(self):
        if self.value is TV.UNKNOWN:
            return "Unknown"
        return f"{self.value}({self.scope})"


def unknown(budget=None, note: str = "", source: str = "tree") -> Verdict:
    return Verdict(TV.UNKNOWN, TO_DEPTH, budget, None, source, note)


# -- schedules --------------------------------------------------------------

class Schedule:
    """Total injective enumeration of a countable index set."""

    size: Optional[int] = None  # None for infinite

    def item(self, i: int):
        raise NotImplementedError

    def explore(self, amount: int) -> int:
        """How many leading indices a node with this budget amount visits."""
        return amount if self.size is None else min(amount, self.size)


@dataclass(frozen=True)
class ElementSchedule(Schedule):
    """Group elements in enumeration order; ``skip_identity`` drops ``e``.

    A budget amount ``w`` means: every element of ``ball(w)``.
    """

    group: Group
    skip_identity: bool = False

    @property
    def size(self):
        if self.group.is_finite:
            return self.group.order - int(self.skip_identity)
        return None

    def item(self, i: int):
        return gr.enumerate_element(self.group, i + int(self.skip_identity))

    def explore(self, amount: int) -> int:
        n = gr.ball_size(self.group, amount) - int(self.skip_identity)
        return n if self.size is None else min(n, self.size)


@dataclass(frozen=True)
class BallSchedule(Schedule):
    """``ball(0), ball(1), ...``: a cofinal chain in the finite subsets."""

    group: Group

    @property
    def size(self):
        r = gr.max_radius(self.group)
        return None if r is None else r + 1

    def item(self, i: int) -> frozenset:
        return frozenset(gr.ball(self.group, i).elements)


@dataclass(frozen=True)
class FiniteSetSchedule(Schedule):
    group: Group

    @property
    def size(self):
        return 2 ** self.group.order if self.group.is_finite else None

    def item(self, i: int) -> frozenset:
        return schedule_finite_sets(self.group, i)


@dataclass(frozen=True)
class ListSchedule(Schedule):
    items: tuple

    @property
    def size(self):
        return len(self.items)

    def item(self, i: int):
        return self.items[i]


_fs_cache: dict = {}
_fs_lock = threading.Lock()


def _finite_sets(group: Group):
    """Finite subsets graded by (smallest ball radius containing F, |F|,
    lexicographic order of the sorted element indices)."""
    yield frozenset()
    prev = 0
    r = 0
    while True:
        elems = gr.ball(group, r).elements
        n = len(elems)
        if n == prev and r > 0:
            return
        for size in range(1, n + 1):
            for combo in itertools.combinations(range(n), size):
                if combo[-1] >= prev:
                    yield frozenset(elems[j] for j in combo)
        prev = n
        r += 1


def schedule_finite_sets(group: Group, i: int) -> frozenset:
    """The ``i``-th finite subset of ``group``: ``0 -> {}``, ``1 -> {e}``."""
    if i < 0:
        raise ValueError("index must be non-negative")
    with _fs_lock:
        cached, it = _fs_cache.get(group, (None, None))
        if cached is None:
            cached, it = [], _finite_sets(group)
            _fs_cache[group] = (cached, it)
        while len(cached) <= i:
            try:
                cached.append(next(it))
            except StopIteration:
                raise IndexError(f"{group} has only {len(cached)} finite subsets") from None
        return cached[i]


# -- trees ------------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    name: str
    params: Any
    predicate: Callable[[Any, Any], bool] = field(compare=False)
    support: Callable[[Any], int] = field(compare=False)

    def decide(self, view) -> bool:
        return bool(self.predicate(view, self.params))


@dataclass(frozen=True)
class Not:
    child: Leaf

    def __post_init__(self):
        if not isinstance(self.child, Leaf):
            raise TypeError("Not applies to leaves only")


@dataclass(frozen=True)
class FiniteAnd:
    children: tuple


@dataclass(frozen=True)
class FiniteOr:
    children: tuple


@dataclass(frozen=True)
class CountableUnion:
    name: str
    schedule: Schedule
    child: Callable[[Any], Any] = field(compare=False)


@dataclass(frozen=True)
class CountableIntersection:
    name: str
    schedule: Schedule
    child: Callable[[Any], Any] = field(compare=False)


BorelTree = TUnion[Leaf, Not, FiniteAnd, FiniteOr, CountableUnion, CountableIntersection]

ALL = "all"


def evaluate(tree: BorelTree, A: SubsetExpr, budget: Budget) -> Verdict:
    """Three-valued evaluation of ``A in tree`` within ``budget``."""
    v = _eval(tree, A, budget)
    return replace(v, budget=budget)


def _leaf_value(leaf: Leaf, A: SubsetExpr, budget: Budget):
    s = leaf.support(leaf.params)
    if s > budget.support_cap:
        return None
    return leaf.decide(LocalView(A, s))


def _eval(node, A, budget) -> Verdict:
    if isinstance(node, (Leaf, Not)):
        leaf = node if isinstance(node, Leaf) else node.child
        b = _leaf_value(leaf, A, budget)
        if b is None:
            return unknown(note="cap")
        if isinstance(node, Not):
            b = not b
        return Verdict(TV.of(b), GLOBAL, path=())
    if isinstance(node, (FiniteAnd, FiniteOr)):
        kids = [lambda i=i: node.children[i] for i in range(len(node.children))]
        return _combine(kids, len(kids), True, A, budget, node, isinstance(node, FiniteOr))
    if isinstance(node, (CountableUnion, CountableIntersection)):
        is_union = isinstance(node, CountableUnion)
        sched = node.schedule
        n = sched.explore(budget.union_width if is_union else budget.intersection_depth)
        kids = [lambda i=i: node.child(sched.item(i)) for i in range(n)]
        exhausted = sched.size is not None and n == sched.size
        return _combine(kids, n, exhausted, A, budget, node, is_union)
    raise TypeError(f"not a Borel tree node: {node!r}")


def _combine(kids, n, exhausted, A, budget, node, is_union) -> Verdict:
    decisive = TV.TRUE if is_union else TV.FALSE
    paths = []
    all_global = True
    saw_unknown = False
    notes = set()
    for i in range(n):
        v = _eval(kids[i](), A, budget)
        if v.value is decisive:
            return Verdict(decisive, v.scope, path=(i, v.path))
        if v.value is TV.UNKNOWN:
            saw_unknown = True
            if v.note:
                notes.add(v.note)
            continue
        paths.append(v.path)
        all_global = all_global and v.scope == GLOBAL
    if saw_unknown:
        return unknown(note=",".join(sorted(notes)))
    if is_union and not exhausted:
        return unknown(note="width")
    scope = GLOBAL if (exhausted and all_global) else TO_DEPTH
    return Verdict(~decisive, scope, path=(ALL, n, tuple(paths)))


# -- replay -----------------------------------------------------------------

class ReplayError(ValueError):
    pass


def replay(verdict: Verdict, tree: BorelTree, A: SubsetExpr) -> bool:
    """Re-derive ``verdict`` along its recorded path using fresh windows.

    Returns False for stale or tampered paths; raises ReplayError when the
    verdict carries nothing to replay (Unknown).
    """
    if verdict.value is TV.UNKNOWN or verdict.path is None:
        raise ReplayError("nothing to replay")
    try:
        return _replay(tree, verdict.path, verdict.value, A)
    except (IndexError, TypeError, ValueError, KeyError):
        return False


def _replay(node, path, expected: TV, A) -> bool:
    if isinstance(node, (Leaf, Not)):
        if path != ():
            return False
        leaf = node if isinstance(node, Leaf) else node.child
        w = window(A, leaf.support(leaf.params))
        b = leaf.decide(WindowView(A, w))
        if isinstance(node, Not):
            b = not b
        return TV.of(b) is expected
    if isinstance(node, (FiniteAnd, FiniteOr)):
        get = lambda i: node.children[i]
        size = len(node.children)
        is_union = isinstance(node, FiniteOr)
    else:
        get = lambda i: node.child(node.schedule.item(i))
        size = node.schedule.size
        is_union = isinstance(node, CountableUnion)
    decisive = TV.TRUE if is_union else TV.FALSE
    if expected is decisive:
        i, sub = path
        if not isinstance(i, int) or i < 0 or (size is not None and i >= size):
            return False
        return _replay(get(i), sub, expected, A)
    tag, n, subs = path
    if tag != ALL or len(subs) != n:
        return False
    if is_union and (size is None or n != size):
        return False
    return all(_replay(get(i), subs[i], expected, A) for i in range(n))


def tamper(path):
    """Mutate a recorded path so that replay must reject it.

    Union witnesses and intersection refuters record the *first* decisive
    index, so moving an index one step earlier lands on a child that was not
    decisive.  Paths made only of zeros get a malformed leaf instead.
    """
    if path == ():
        return (0,)
    if path[0] == ALL:
        _, n, subs = path
        return (ALL, n + 1, subs)
    i, sub = path
    if i > 0:
        return (i - 1, sub)
    return (i, tamper(sub))
