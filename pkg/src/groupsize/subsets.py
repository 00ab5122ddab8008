"""Describable subsets of a group, windows and cylinder sets.

A subset is a small immutable expression tree.  Every constructor has total,
decidable membership, so the characteristic function of ``A`` can be read on
any finite part of the group.  That is all the topology on ``P(G)`` needs:
the basic open sets only ever look at finitely many bits.
"""

from __future__ import annotations

import bisect
import functools
import math
import threading
from dataclasses import dataclass
from typing import Callable, Optional

from . import groups as gr
from .groups import Group, GroupError
from .periodic import PeriodicSpec
from .poly import Poly

Z = Group(gr.INTEGER)


class SubsetError(ValueError):
    pass


class LocalityError(LookupError):
    """A local predicate read a bit outside its declared support."""


class SubsetExpr:
    group: Group

    def __contains__(self, g) -> bool:
        return member(self, g)


def _require_integer(group: Group, what: str):
    if group.kind != gr.INTEGER:
        raise SubsetError(f"{what} is only defined over Z, not {group}")


@dataclass(frozen=True)
class Finite(SubsetExpr):
    group: Group
    elements: frozenset

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        for x in self.elements:
            gr.check(self.group, x)

    def sorted_elements(self) -> list:
        return sorted(self.elements, key=lambda x: gr.index_of(self.group, x))


@dataclass(frozen=True)
class Residues(SubsetExpr):
    modulus: int
    residues: frozenset
    group: Group = Z

    def __post_init__(self):
        _require_integer(self.group, "residues")
        if self.modulus < 1:
            raise SubsetError("modulus must be >= 1")
        object.__setattr__(self, "residues", frozenset(self.residues))
        if any(not 0 <= r < self.modulus for r in self.residues):
            raise SubsetError(f"residues must lie in [0, {self.modulus})")


SQUARES, POWERS, FACTORIALS, GAPS = "squares", "powers", "factorials", "gaps"


@dataclass(frozen=True)
class Sequence(SubsetExpr):
    """A one-sided increasing sequence of non-negative integers.

    ``squares`` is ``{k^2}``, ``powers`` is ``{base^k : k >= 0}``,
    ``factorials`` is ``{k!}``, and ``gaps`` is ``s_0 = 0``,
    ``s_{k+1} = s_k + gap(k)`` for a polynomial ``gap`` positive on ``k >= 0``.
    """

    kind: str
    base: int = 2
    gap: Poly = Poly((1,))
    group: Group = Z

    def __post_init__(self):
        _require_integer(self.group, "sequences")
        if self.kind not in (SQUARES, POWERS, FACTORIALS, GAPS):
            raise SubsetError(f"unknown sequence kind {self.kind!r}")
        if self.kind == POWERS and self.base < 2:
            raise SubsetError("powers need base >= 2")
        if self.kind == GAPS and not self.gap.min_on_naturals(strict=True):
            raise SubsetError(f"gap polynomial {self.gap} is not positive on k >= 0")


@dataclass(frozen=True)
class Blocks(SubsetExpr):
    """Union of intervals ``[offset(k), offset(k) + length(k))`` for ``k >= 0``."""

    offset: Poly
    length: Poly
    group: Group = Z

    def __post_init__(self):
        _require_integer(self.group, "blocks")
        step = self.offset.shift(1) - self.offset
        if not step.min_on_naturals(strict=True):
            raise SubsetError("block offsets must be strictly increasing")
        if not self.length.min_on_naturals(strict=False):
            raise SubsetError("block lengths must be non-negative")
        if not (step - self.length).min_on_naturals(strict=False):
            raise SubsetError("blocks must not overlap")


@dataclass(frozen=True)
class FPSet(SubsetExpr):
    """Finite products ``g_{i1}...g_{in} [b_{in}]`` over ``i1 < ... < in``."""

    group: Group
    generators: tuple
    shifts: Optional[tuple] = None

    def __post_init__(self):
        from .fp import fp_elements

        # validates injectivity and length
        fp_elements(self.group, self.generators, self.shifts)

    @functools.cached_property
    def elements(self) -> frozenset:
        from .fp import fp_elements

        return frozenset(x for x, _ in fp_elements(self.group, self.generators, self.shifts))


@dataclass(frozen=True)
class EventuallyPeriodic(SubsetExpr):
    spec: PeriodicSpec
    group: Group = Z

    def __post_init__(self):
        _require_integer(self.group, "eventually periodic sets")


@dataclass(frozen=True)
class Translate(SubsetExpr):
    """The left translate ``tA``."""

    t: object
    child: SubsetExpr

    def __post_init__(self):
        gr.check(self.child.group, self.t)

    @property
    def group(self) -> Group:
        return self.child.group


def _same_group(a: SubsetExpr, b: SubsetExpr) -> Group:
    if a.group != b.group:
        raise SubsetError(f"group mismatch: {a.group} vs {b.group}")
    return a.group


@dataclass(frozen=True)
class Union(SubsetExpr):
    left: SubsetExpr
    right: SubsetExpr

    def __post_init__(self):
        _same_group(self.left, self.right)

    @property
    def group(self) -> Group:
        return self.left.group


@dataclass(frozen=True)
class Intersection(SubsetExpr):
    left: SubsetExpr
    right: SubsetExpr

    def __post_init__(self):
        _same_group(self.left, self.right)

    @property
    def group(self) -> Group:
        return self.left.group


@dataclass(frozen=True)
class Complement(SubsetExpr):
    child: SubsetExpr

    @property
    def group(self) -> Group:
        return self.child.group


_OPAQUE: dict[str, Callable] = {}


def register_opaque(name: str, predicate: Callable) -> None:
    """Register ``predicate(group, g) -> bool`` for use by :class:`Opaque`."""
    _OPAQUE[name] = predicate


@dataclass(frozen=True)
class Opaque(SubsetExpr):
    """A registered predicate; refuses elements longer than ``budget``."""

    group: Group
    name: str
    budget: int

    def __post_init__(self):
        if self.name not in _OPAQUE:
            raise SubsetError(f"no opaque predicate named {self.name!r}")
        if self.budget < 0:
            raise SubsetError("membership budget must be non-negative")


def empty(group: Group) -> Finite:
    return Finite(group, frozenset())


def full(group: Group) -> Complement:
    return Complement(empty(group))


# -- membership -----------------------------------------------------------

def member(A: SubsetExpr, g) -> bool:
    """Is ``g`` in ``A``?"""
    gr.check(A.group, g)
    return _member(A, g)


@functools.lru_cache(maxsize=1 << 20)
def _member(A: SubsetExpr, g) -> bool:
    group = A.group
    if isinstance(A, Finite):
        return g in A.elements
    if isinstance(A, Residues):
        return g % A.modulus in A.residues
    if isinstance(A, Sequence):
        return _sequence_member(A, g)
    if isinstance(A, Blocks):
        return _blocks_member(A, g)
    if isinstance(A, FPSet):
        return g in A.elements
    if isinstance(A, EventuallyPeriodic):
        return g in A.spec
    if isinstance(A, Translate):
        return _member(A.child, gr._mul(group, gr._inv(group, A.t), g))
    if isinstance(A, Union):
        return _member(A.left, g) or _member(A.right, g)
    if isinstance(A, Intersection):
        return _member(A.left, g) and _member(A.right, g)
    if isinstance(A, Complement):
        return not _member(A.child, g)
    if isinstance(A, Opaque):
        if gr.word_length(group, g) > A.budget:
            raise SubsetError(f"opaque set {A.name!r} only answers |g| <= {A.budget}")
        return bool(_OPAQUE[A.name](group, g))
    raise TypeError(f"not a subset expression: {A!r}")


_terms: dict = {}
_terms_lock = threading.Lock()


def _sequence_terms_upto(A: Sequence, bound: int) -> list[int]:
    """Cached increasing terms of a ``gaps`` sequence, extended past ``bound``."""
    with _terms_lock:
        terms = _terms.setdefault(A, [0])
        while terms[-1] < bound:
            terms.append(terms[-1] + A.gap(len(terms) - 1))
        return terms


def _sequence_member(A: Sequence, g: int) -> bool:
    if g < 0:
        return False
    if A.kind == SQUARES:
        return math.isqrt(g) ** 2 == g
    if A.kind == POWERS:
        if g == 0:
            return False
        while g % A.base == 0:
            g //= A.base
        return g == 1
    if A.kind == FACTORIALS:
        k, f = 1, 1
        while f < g:
            k += 1
            f *= k
        return f == g
    terms = _sequence_terms_upto(A, g)
    i = bisect.bisect_left(terms, g)
    return i < len(terms) and terms[i] == g


def sequence_term(A: Sequence, k: int) -> int:
    if A.kind == SQUARES:
        return k * k
    if A.kind == POWERS:
        return A.base**k
    if A.kind == FACTORIALS:
        return math.factorial(k + 1)
    terms = _sequence_terms_upto(A, 0)
    while len(terms) <= k:
        terms = _sequence_terms_upto(A, terms[-1] + 1)
    return terms[k]


def _blocks_member(A: Blocks, g: int) -> bool:
    off = A.offset
    if g < off(0):
        return False
    hi = 1
    while off(hi) <= g:
        hi *= 2
    lo = 0
    # invariant: off(lo) <= g < off(hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if off(mid) <= g:
            lo = mid
        else:
            hi = mid
    return g < off(lo) + A.length(lo)


# -- windows and local views -----------------------------------------------

@dataclass(frozen=True)
class Window:
    radius: int
    bits: tuple


@functools.lru_cache(maxsize=4096)
def window(A: SubsetExpr, r: int) -> Window:
    """Characteristic vector of ``A`` over ``ball(r)`` in enumeration order."""
    return Window(r, tuple(int(_member(A, x)) for x in gr.ball(A.group, r)))


class LocalView:
    """Membership access to ``A`` restricted to ``ball(radius)``."""

    __slots__ = ("A", "radius", "group")

    def __init__(self, A: SubsetExpr, radius: int):
        self.A = A
        self.radius = radius
        self.group = A.group

    def __contains__(self, g) -> bool:
        if gr.word_length(self.group, g) > self.radius:
            raise LocalityError(f"{g!r} lies outside ball({self.radius})")
        return _member(self.A, g)


class WindowView(LocalView):
    """Like :class:`LocalView` but answering from a materialised :class:`Window`."""

    __slots__ = ("bits",)

    def __init__(self, A: SubsetExpr, w: Window):
        super().__init__(A, w.radius)
        self.bits = w.bits

    def __contains__(self, g) -> bool:
        i = gr.index_of(self.group, g)
        if i >= len(self.bits):
            raise LocalityError(f"{g!r} lies outside ball({self.radius})")
        return bool(self.bits[i])


# -- cylinders ------------------------------------------------------------

@dataclass(frozen=True)
class Cylinder:
    """``{X : positive <= X and X & negative = {}}``, a basic clopen set."""

    group: Group
    positive: frozenset = frozenset()
    negative: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "negative", frozenset(self.negative))
        if self.positive & self.negative:
            raise SubsetError("cylinder constraints overlap; the cylinder would be empty")
        for x in self.positive | self.negative:
            gr.check(self.group, x)

    @property
    def support(self) -> int:
        return max((gr.word_length(self.group, x) for x in self.positive | self.negative), default=0)

    def holds(self, view) -> bool:
        return all(x in view for x in self.positive) and not any(x in view for x in self.negative)


def cylinder_contains(c: Cylinder, A: SubsetExpr) -> bool:
    if c.group != A.group:
        raise SubsetError("group mismatch between cylinder and subset")
    return c.holds(LocalView(A, c.support))


# -- translation ----------------------------------------------------------

def translate(t, A: SubsetExpr) -> SubsetExpr:
    """The left translate ``tA``; simplifies where the result stays simple."""
    group = A.group
    gr.check(group, t)
    if t == gr.identity(group):
        return A
    if isinstance(A, Finite):
        return Finite(group, frozenset(gr._mul(group, t, x) for x in A.elements))
    if isinstance(A, Translate):
        return translate(gr._mul(group, t, A.t), A.child)
    if isinstance(A, Residues):
        return Residues(A.modulus, frozenset((r + t) % A.modulus for r in A.residues))
    return Translate(t, A)


# -- exact periodic structure over Z ---------------------------------------

def periodic_form(A: SubsetExpr) -> Optional[PeriodicSpec]:
    """The exact :class:`PeriodicSpec` of ``A`` when ``A`` is eventually periodic
    by construction, else None (which does not mean ``A`` is not periodic)."""
    if A.group.kind != gr.INTEGER:
        return None
    return _pform(A)


@functools.lru_cache(maxsize=4096)
def _pform(A: SubsetExpr) -> Optional[PeriodicSpec]:
    if isinstance(A, Finite):
        return PeriodicSpec.from_finite(A.elements)
    if isinstance(A, FPSet):
        return PeriodicSpec.from_finite(A.elements)
    if isinstance(A, Residues):
        return PeriodicSpec.from_residues(A.modulus, A.residues)
    if isinstance(A, EventuallyPeriodic):
        return A.spec.normalized()
    if isinstance(A, Sequence):
        if A.kind == GAPS and A.gap.degree == 0:
            c = A.gap(0)
            word = (1,) + (0,) * (c - 1)
            return PeriodicSpec((0,), (), 0, word).normalized()
        return None
    if isinstance(A, Blocks):
        step = A.offset.shift(1) - A.offset
        if step.degree == 0 and A.length.degree == 0:
            d, o, n = step(0), A.offset(0), A.length(0)
            right = tuple(int((j - o) % d < n) for j in range(d))
            return PeriodicSpec((0,), (), o, right).normalized()
        return None
    if isinstance(A, Translate):
        child = _pform(A.child)
        return None if child is None else child.translate(A.t).normalized()
    if isinstance(A, Complement):
        child = _pform(A.child)
        return None if child is None else child.complement().normalized()
    if isinstance(A, (Union, Intersection)):
        left, right = _pform(A.left), _pform(A.right)
        if left is None or right is None:
            return None
        return left.union(right) if isinstance(A, Union) else left.intersection(right)
    return None


# -- structural finiteness -------------------------------------------------

PROVED_FINITE = "ProvedFinite"
PROVED_INFINITE = "ProvedInfinite"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Finiteness:
    status: str
    bound: Optional[int] = None

    @property
    def finite(self) -> bool:
        return self.status == PROVED_FINITE

    @property
    def infinite(self) -> bool:
        return self.status == PROVED_INFINITE


def finiteness(A: SubsetExpr) -> Finiteness:
    """Sound three-valued structural finiteness; never reads windows."""
    group = A.group
    if group.is_finite:
        return Finiteness(PROVED_FINITE, sum(1 for x in gr.iter_elements(group) if _member(A, x)))
    spec = periodic_form(A)
    if spec is not None:
        if spec.is_finite():
            return Finiteness(PROVED_FINITE, spec.cardinality())
        return Finiteness(PROVED_INFINITE)
    if isinstance(A, Finite):
        return Finiteness(PROVED_FINITE, len(A.elements))
    if isinstance(A, FPSet):
        return Finiteness(PROVED_FINITE, len(A.elements))
    if isinstance(A, Sequence):
        return Finiteness(PROVED_INFINITE)
    if isinstance(A, Blocks):
        return Finiteness(PROVED_FINITE, 0) if A.length.is_zero() else Finiteness(PROVED_INFINITE)
    if isinstance(A, Translate):
        return finiteness(A.child)
    if isinstance(A, Union):
        a, b = finiteness(A.left), finiteness(A.right)
        if a.infinite or b.infinite:
            return Finiteness(PROVED_INFINITE)
        if a.finite and b.finite:
            return Finiteness(PROVED_FINITE, a.bound + b.bound)
        return Finiteness(UNKNOWN)
    if isinstance(A, Intersection):
        a, b = finiteness(A.left), finiteness(A.right)
        bounds = [f.bound for f in (a, b) if f.finite]
        if bounds:
            return Finiteness(PROVED_FINITE, min(bounds))
        return Finiteness(UNKNOWN)
    if isinstance(A, Complement):
        if finiteness(A.child).finite:
            return Finiteness(PROVED_INFINITE)
        return Finiteness(UNKNOWN)
    return Finiteness(UNKNOWN)


def describe(A: SubsetExpr) -> str:
    """Compact human-readable rendering, mirroring the DSL."""
    g = A.group
    if isinstance(A, Finite):
        return "finite(" + ", ".join(gr.format_element(g, x) for x in A.sorted_elements()) + ")"
    if isinstance(A, Residues):
        return f"residues({A.modulus}; " + ", ".join(map(str, sorted(A.residues))) + ")"
    if isinstance(A, Sequence):
        return {SQUARES: "squares", FACTORIALS: "factorials"}.get(
            A.kind, f"powers({A.base})" if A.kind == POWERS else f"gaps({A.gap})"
        )
    if isinstance(A, Blocks):
        return f"blocks({A.offset}, {A.length})"
    if isinstance(A, FPSet):
        gens = ", ".join(gr.format_element(g, x) for x in A.generators)
        if A.shifts is None:
            return f"fp({gens})"
        return f"fp_shifted({gens}; " + ", ".join(gr.format_element(g, x) for x in A.shifts) + ")"
    if isinstance(A, EventuallyPeriodic):
        s = A.spec
        bits = lambda w: "".join(map(str, w))
        return f"periodic({bits(s.left)}; {s.lo}:{bits(s.center)}; {bits(s.right)})"
    if isinstance(A, Translate):
        return f"translate({gr.format_element(g, A.t)}, {describe(A.child)})"
    if isinstance(A, Union):
        return f"union({describe(A.left)}, {describe(A.right)})"
    if isinstance(A, Intersection):
        return f"inter({describe(A.left)}, {describe(A.right)})"
    if isinstance(A, Complement):
        return f"compl({describe(A.child)})"
    return f"opaque({A.name})"


__all__ = [
    "SubsetExpr", "Finite", "Residues", "Sequence", "Blocks", "FPSet", "EventuallyPeriodic",
    "Translate", "Union", "Intersection", "Complement", "Opaque", "register_opaque",
    "member", "window", "Window", "LocalView", "WindowView", "Cylinder", "cylinder_contains",
    "translate", "finiteness", "Finiteness", "periodic_form", "empty", "full", "describe",
    "SubsetError", "LocalityError", "GroupError", "Z",
]
