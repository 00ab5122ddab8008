"""Two-sided eventually periodic subsets of Z.

A :class:`PeriodicSpec` describes ``A`` by a left period word, a centre and a
right period word.  Period words are anchored at residue 0: bit ``j`` of the
right word says whether ``x`` is in ``A`` for ``x >= hi`` with
``x % len(right) == j``; likewise for the left word on ``x < lo``.  Inside
``[lo, hi)`` membership is given by ``center[x - lo]``.

Boolean combinations and translates of such sets stay in the class, which
is what makes finiteness of ``gA & A`` decidable for residue-built sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _min_period(word: tuple) -> tuple:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and all(word[i] == word[i % d] for i in range(n)):
            return word[:d]
    return word


@dataclass(frozen=True)
class PeriodicSpec:
    left: tuple
    center: tuple
    lo: int
    right: tuple

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("period words must be non-empty")
        for w in (self.left, self.center, self.right):
            if any(b not in (0, 1) for b in w):
                raise ValueError("period and centre words are bit tuples")

    @property
    def hi(self) -> int:
        return self.lo + len(self.center)

    @property
    def period(self) -> int:
        return math.lcm(len(self.left), len(self.right))

    def __contains__(self, x: int) -> bool:
        if x < self.lo:
            return bool(self.left[x % len(self.left)])
        if x >= self.hi:
            return bool(self.right[x % len(self.right)])
        return bool(self.center[x - self.lo])

    # -- normal form -------------------------------------------------------

    def normalized(self) -> "PeriodicSpec":
        left = _min_period(self.left)
        right = _min_period(self.right)
        lo, hi = self.lo, self.hi
        bits = dict((x, x in self) for x in range(lo, hi))
        while hi > lo and bits[hi - 1] == bool(right[(hi - 1) % len(right)]):
            hi -= 1
        while lo < hi and bits[lo] == bool(left[lo % len(left)]):
            lo += 1
        center = tuple(int(bits[x]) for x in range(lo, hi))
        if not center:
            if left == right:
                lo = 0
            else:
                while left[(lo - 1) % len(left)] == right[(lo - 1) % len(right)]:
                    lo -= 1
        return PeriodicSpec(left, center, lo, right)

    def is_normalized(self) -> bool:
        return self == self.normalized()

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_finite(cls, elements) -> "PeriodicSpec":
        elements = sorted(set(elements))
        if not elements:
            return cls((0,), (), 0, (0,))
        lo, hi = elements[0], elements[-1] + 1
        s = set(elements)
        return cls((0,), tuple(int(x in s) for x in range(lo, hi)), lo, (0,))

    @classmethod
    def from_residues(cls, modulus: int, residues) -> "PeriodicSpec":
        r = set(residues)
        word = tuple(int(i in r) for i in range(modulus))
        return cls(word, (), 0, word).normalized()

    @classmethod
    def from_function(cls, pred, period: int, lo: int, hi: int) -> "PeriodicSpec":
        """Sample ``pred`` assuming it is ``period``-periodic off ``[lo, hi)``."""
        lo_al = lo - (lo % period) - period
        hi_al = hi + (-hi % period) + period
        lb, rb = lo_al - period, hi_al
        left = tuple(int(pred(lb + (j - lb) % period)) for j in range(period))
        right = tuple(int(pred(rb + (j - rb) % period)) for j in range(period))
        center = tuple(int(pred(x)) for x in range(lo_al, hi_al))
        return cls(left, center, lo_al, right).normalized()

    # -- algebra -----------------------------------------------------------

    def translate(self, t: int) -> "PeriodicSpec":
        """The set ``t + A``."""
        return PeriodicSpec(
            _rotate(self.left, t), self.center, self.lo + t, _rotate(self.right, t)
        )

    def complement(self) -> "PeriodicSpec":
        flip = lambda w: tuple(1 - b for b in w)
        return PeriodicSpec(flip(self.left), flip(self.center), self.lo, flip(self.right))

    def combine(self, other: "PeriodicSpec", op) -> "PeriodicSpec":
        p = math.lcm(self.period, other.period)
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        return PeriodicSpec.from_function(lambda x: op(x in self, x in other), p, lo, hi)

    def union(self, other):
        return self.combine(other, lambda a, b: a or b)

    def intersection(self, other):
        return self.combine(other, lambda a, b: a and b)

    # -- structure ---------------------------------------------------------

    @property
    def left_nonzero(self) -> bool:
        return any(self.left)

    @property
    def right_nonzero(self) -> bool:
        return any(self.right)

    def is_finite(self) -> bool:
        return not (self.left_nonzero or self.right_nonzero)

    def members(self, lo: int, hi: int) -> list[int]:
        return [x for x in range(lo, hi) if x in self]

    def cardinality(self) -> int:
        if not self.is_finite():
            raise ValueError("infinite set")
        return sum(self.center)

    def bits(self, lo: int, hi: int) -> tuple:
        return tuple(int(x in self) for x in range(lo, hi))


def _rotate(word: tuple, t: int) -> tuple:
    # (t + A) contains x iff A contains x - t
    n = len(word)
    return tuple(word[(j - t) % n] for j in range(n))
