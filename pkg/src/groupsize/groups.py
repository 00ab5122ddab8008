"""Countable groups with a canonical enumeration and word-metric balls.

Four kinds are supported:

* ``Z``      integers, elements are ``int``
* ``Z^d``    integer lattices, elements are ``tuple[int, ...]``
* ``F_k``    free groups, elements are reduced words ``str`` over ``a, b, ...``
             with capitals for inverses (``"aB"`` is a * b^-1)
* ``Z/m``    cyclic groups, elements are residues ``int`` in ``[0, m)``

Enumeration is graded by word length; ties are broken lexicographically by
generator order (``e1, -e1, e2, -e2, ...`` for lattices, ``a, A, b, B, ...``
for free groups).  ``Z`` and ``Z/m`` use the spiral order ``0, 1, -1, 2, -2``.
"""

from __future__ import annotations

import functools
import math
import re
import string
import threading
from dataclasses import dataclass, field
from typing import Any, Iterator

Element = Any

INTEGER = "Z"
LATTICE = "Z^d"
FREE = "F_k"
CYCLIC = "Z/m"


class GroupError(ValueError):
    """Malformed element or descriptor."""


@dataclass(frozen=True)
class Group:
    kind: str
    param: int = 1
    _spheres: list = field(default_factory=list, init=False, repr=False, compare=False, hash=False)
    _lock: threading.Lock = field(
        default_factory=threading.Lock, init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        if self.kind not in (INTEGER, LATTICE, FREE, CYCLIC):
            raise GroupError(f"unknown group kind {self.kind!r}")
        if self.param < 1:
            raise GroupError("group parameter must be >= 1")
        if self.kind == FREE and self.param > 13:
            raise GroupError("free groups of rank > 13 are not supported")

    def __str__(self):
        if self.kind == INTEGER:
            return "Z"
        if self.kind == LATTICE:
            return f"Z^{self.param}"
        if self.kind == FREE:
            return f"F_{self.param}"
        return f"Z/{self.param}"

    @property
    def is_finite(self) -> bool:
        return self.kind == CYCLIC

    @property
    def order(self) -> int | None:
        return self.param if self.kind == CYCLIC else None

    @property
    def generators(self) -> tuple:
        """The canonical symmetric generating set, in documented order."""
        if self.kind == INTEGER:
            return (1, -1)
        if self.kind == LATTICE:
            gens = []
            for i in range(self.param):
                for s in (1, -1):
                    v = [0] * self.param
                    v[i] = s
                    gens.append(tuple(v))
            return tuple(gens)
        if self.kind == FREE:
            return tuple(c for x in _letters(self.param) for c in (x, x.upper()))
        m = self.param
        return tuple(dict.fromkeys(g for g in (1 % m, (-1) % m) if g != 0))

    # -- spheres, cached per instance -------------------------------------

    def sphere(self, r: int) -> tuple:
        """Elements of word length exactly ``r`` in enumeration order."""
        with self._lock:
            while len(self._spheres) <= r:
                self._spheres.append(self._build_sphere(len(self._spheres)))
            return self._spheres[r]

    def _build_sphere(self, r: int) -> tuple:
        if self.kind == INTEGER:
            return (0,) if r == 0 else (r, -r)
        if self.kind == CYCLIC:
            m = self.param
            if r > m // 2:
                return ()
            return tuple(dict.fromkeys((r % m, (-r) % m)))
        if self.kind == LATTICE:
            return tuple(sorted(_l1_sphere(self.param, r), key=_lattice_key))
        if r == 0:
            return ("",)
        gens = self.generators
        out = []
        for w in self._spheres[r - 1]:
            for x in gens:
                if w and w[-1] == x.swapcase():
                    continue
                out.append(w + x)
        return tuple(out)


def _letters(k: int) -> str:
    return string.ascii_lowercase[:k]


def _l1_sphere(d: int, r: int) -> Iterator[tuple]:
    if d == 1:
        yield from ((r,), (-r,)) if r else ((0,),)
        return
    for head in range(-r, r + 1):
        for tail in _l1_sphere(d - 1, r - abs(head)):
            yield (head,) + tail


def _lattice_key(v: tuple) -> tuple:
    # the canonical word: e1 or -e1 repeated, then e2 or -e2, ...
    word = []
    for i, x in enumerate(v):
        word.extend([2 * i if x > 0 else 2 * i + 1] * abs(x))
    return tuple(word)


# -- parsing and formatting -----------------------------------------------

_GROUP_RE = re.compile(r"^\s*(?:Z\^(\d+)|Z/(\d+)|F_(\d+)|Z)\s*$")


def parse_group(text: str) -> Group:
    """Parse ``Z``, ``Z^d``, ``F_k`` or ``Z/m``."""
    m = _GROUP_RE.match(text)
    if not m:
        raise GroupError(f"cannot parse group {text!r}")
    d, mod, k = m.groups()
    if d is not None:
        return Group(LATTICE, int(d))
    if mod is not None:
        return Group(CYCLIC, int(mod))
    if k is not None:
        return Group(FREE, int(k))
    return Group(INTEGER)


def parse_element(group: Group, text: str) -> Element:
    text = text.strip()
    if group.kind in (INTEGER, CYCLIC):
        try:
            x = int(text)
        except ValueError:
            raise GroupError(f"not an integer: {text!r}") from None
        return x % group.param if group.kind == CYCLIC else x
    if group.kind == LATTICE:
        if not (text.startswith("(") and text.endswith(")")):
            raise GroupError(f"lattice elements are written (x y ...): {text!r}")
        parts = text[1:-1].replace(",", " ").split()
        try:
            v = tuple(int(p) for p in parts)
        except ValueError:
            raise GroupError(f"bad lattice element {text!r}") from None
        check(group, v)
        return v
    word = "" if text in ("e", "1") else text
    return reduce_word(group, word)


def format_element(group: Group, x: Element) -> str:
    if group.kind == LATTICE:
        return "(" + " ".join(map(str, x)) + ")"
    if group.kind == FREE:
        return x or "e"
    return str(x)


# -- validation -----------------------------------------------------------

def reduce_word(group: Group, word: str) -> str:
    """Freely reduce ``word``; letters must belong to the group's alphabet."""
    alphabet = set(group.generators)
    out: list[str] = []
    for c in word:
        if c not in alphabet:
            raise GroupError(f"letter {c!r} is not a generator of {group}")
        if out and out[-1] == c.swapcase():
            out.pop()
        else:
            out.append(c)
    return "".join(out)


def check(group: Group, x: Element) -> Element:
    """Raise GroupError unless ``x`` is in canonical form for ``group``."""
    kind = group.kind
    if kind == INTEGER:
        ok = isinstance(x, int) and not isinstance(x, bool)
    elif kind == CYCLIC:
        ok = isinstance(x, int) and not isinstance(x, bool) and 0 <= x < group.param
    elif kind == LATTICE:
        ok = (
            isinstance(x, tuple)
            and len(x) == group.param
            and all(isinstance(c, int) and not isinstance(c, bool) for c in x)
        )
    else:
        ok = isinstance(x, str) and reduce_word(group, x) == x
    if not ok:
        raise GroupError(f"malformed element {x!r} for {group}")
    return x


# -- group operations ------------------------------------------------------

def identity(group: Group) -> Element:
    if group.kind == LATTICE:
        return (0,) * group.param
    if group.kind == FREE:
        return ""
    return 0


def multiply(group: Group, a: Element, b: Element) -> Element:
    check(group, a)
    check(group, b)
    return _mul(group, a, b)


def _mul(group: Group, a: Element, b: Element) -> Element:
    kind = group.kind
    if kind == INTEGER:
        return a + b
    if kind == CYCLIC:
        return (a + b) % group.param
    if kind == LATTICE:
        return tuple(x + y for x, y in zip(a, b))
    i = 0
    n = min(len(a), len(b))
    while i < n and a[len(a) - 1 - i] == b[i].swapcase():
        i += 1
    return a[: len(a) - i] + b[i:]


def inverse(group: Group, a: Element) -> Element:
    check(group, a)
    return _inv(group, a)


def _inv(group: Group, a: Element) -> Element:
    kind = group.kind
    if kind == INTEGER:
        return -a
    if kind == CYCLIC:
        return (-a) % group.param
    if kind == LATTICE:
        return tuple(-x for x in a)
    return a[::-1].swapcase()


def word_length(group: Group, a: Element) -> int:
    kind = group.kind
    if kind == INTEGER:
        return abs(a)
    if kind == CYCLIC:
        return min(a, group.param - a)
    if kind == LATTICE:
        return sum(abs(x) for x in a)
    return len(a)


def ball_size(group: Group, r: int) -> int:
    """Closed-form count of elements of word length <= r."""
    kind = group.kind
    if kind == INTEGER:
        return 2 * r + 1
    if kind == CYCLIC:
        return min(group.param, 2 * r + 1)
    if kind == LATTICE:
        d = group.param
        # Delannoy-type count: sum_i 2^i C(d,i) C(r,i)
        return sum(2**i * math.comb(d, i) * math.comb(r, i) for i in range(min(d, r) + 1))
    k = group.param
    return 1 + sum(2 * k * (2 * k - 1) ** (i - 1) for i in range(1, r + 1))


def max_radius(group: Group) -> int | None:
    return group.param // 2 if group.kind == CYCLIC else None


@dataclass(frozen=True)
class Ball:
    radius: int
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements


@functools.lru_cache(maxsize=512)
def ball(group: Group, r: int) -> Ball:
    if r < 0:
        raise GroupError("radius must be non-negative")
    top = r if group.kind != CYCLIC else min(r, group.param // 2)
    elems: list = []
    for i in range(top + 1):
        elems.extend(group.sphere(i))
    return Ball(r, tuple(elems))


def iter_elements(group: Group) -> Iterator[Element]:
    """All elements in enumeration order (finite for cyclic groups)."""
    r = 0
    while True:
        s = group.sphere(r)
        if not s:
            return
        yield from s
        r += 1


def enumerate_element(group: Group, n: int) -> Element:
    """The n-th element of the canonical enumeration (``enumerate(0) = e``)."""
    if n < 0:
        raise GroupError("index must be non-negative")
    if group.kind == INTEGER:
        return (n + 1) // 2 if n % 2 else -(n // 2)
    if group.kind == CYCLIC and n >= group.param:
        raise GroupError(f"index {n} out of range for {group}")
    r = 0
    while True:
        s = group.sphere(r)
        if n < len(s):
            return s[n]
        n -= len(s)
        r += 1


def index_of(group: Group, x: Element) -> int:
    """Inverse of :func:`enumerate_element`."""
    check(group, x)
    if group.kind == INTEGER:
        return 2 * x - 1 if x > 0 else -2 * x
    r = word_length(group, x)
    before = ball_size(group, r - 1) if r else 0
    return before + group.sphere(r).index(x)
