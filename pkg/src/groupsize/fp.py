"""Finite-product sets, piecewise shifted FP-sets and Schur/Hindman checks.

All searches are truncations: ``k`` generators stand in for the infinite
sequence, so a found witness is evidence of containing an FP-set, never a
proof.  Witnesses are required to produce ``2^k - 1`` pairwise distinct
elements; otherwise every set with one element would "contain" a shifted
FP-set of any length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import groups as gr
from .groups import Group

MAX_GENERATORS = 24


class FPError(ValueError):
    pass


class SearchExhausted(FPError):
    """The search hit its step limit before deciding."""


@dataclass(frozen=True)
class FPWitness:
    group: Group
    generators: tuple
    shifts: Optional[tuple] = None

    @property
    def k(self) -> int:
        return len(self.generators)

    def elements(self) -> list:
        """``(element, index tuple)`` pairs, see :func:`fp_elements`."""
        return fp_elements(self.group, self.generators, self.shifts)

    def check(self, contains) -> bool:
        """Replay: every produced element lies in ``contains`` and they are distinct."""
        elems = [x for x, _ in self.elements()]
        return len(set(elems)) == len(elems) and all(contains(x) for x in elems)


def fp_elements(group: Group, generators: Sequence, shifts: Optional[Sequence] = None) -> list:
    """All nonempty ascending products, tagged with their index tuples.

    With ``shifts`` each product ``g_{i1}...g_{in}`` is right-multiplied by
    ``b_{in}``.  Products are listed by subset size, then lexicographically.
    """
    gens = tuple(generators)
    k = len(gens)
    if not 1 <= k <= MAX_GENERATORS:
        raise FPError(f"need 1 <= k <= {MAX_GENERATORS} generators, got {k}")
    for g in gens:
        gr.check(group, g)
    if len(set(gens)) != k:
        raise FPError("generators must be pairwise distinct")
    if shifts is not None:
        shifts = tuple(shifts)
        if len(shifts) != k:
            raise FPError("need one shift per generator")
        for b in shifts:
            gr.check(group, b)
    out = []
    for n in range(1, k + 1):
        for idx in itertools.combinations(range(k), n):
            x = gens[idx[0]]
            for i in idx[1:]:
                x = gr._mul(group, x, gens[i])
            if shifts is not None:
                x = gr._mul(group, x, shifts[idx[-1]])
            out.append((x, idx))
    return out


def search_fp(group: Group, inside, k: int, radius: int, shifted: bool,
              max_steps: Optional[int] = None) -> Optional[FPWitness]:
    """Depth-first search for a ``k``-generator (shifted) FP-set whose
    ``2^k - 1`` distinct elements all satisfy ``inside``.

    Raises :class:`SearchExhausted` after ``max_steps`` candidate extensions.
    """
    if k < 1:
        raise FPError("k must be >= 1")
    elems = gr.ball(group, radius).elements
    e = gr.identity(group)
    shift_pool = elems if shifted else (e,)
    steps = [0]

    def extend(start: int, gens: list, shifts: list, prods: list, seen: set):
        if len(gens) == k:
            return FPWitness(group, tuple(gens), tuple(shifts) if shifted else None)
        for j in range(start, len(elems)):
            g = elems[j]
            heads = [gr._mul(group, p, g) for p in prods]
            for b in shift_pool:
                steps[0] += 1
                if max_steps is not None and steps[0] > max_steps:
                    raise SearchExhausted(f"no decision within {max_steps} steps")
                new = [gr._mul(group, h, b) for h in heads]
                if len(set(new)) != len(new) or any(x in seen for x in new):
                    continue
                if all(inside(x) for x in new):
                    found = extend(j + 1, gens + [g], shifts + [b], prods + heads, seen | set(new))
                    if found is not None:
                        return found
        return None

    return extend(0, [], [], [e], set())


def contains_fp(A, k: int, radius: int) -> Optional[FPWitness]:
    """First ``k``-generator FP-set inside ``A`` with generators in ``ball(radius)``.

    Generators are tried as increasing enumeration-index tuples.
    """
    from .subsets import member

    return search_fp(A.group, lambda x: member(A, x), k, radius, shifted=False)


def contains_pws_fp(A, k: int, radius: int, max_steps: Optional[int] = None) -> Optional[FPWitness]:
    """Like :func:`contains_fp` with a free right shift per generator."""
    from .subsets import member

    return search_fp(A.group, lambda x: member(A, x), k, radius, shifted=True, max_steps=max_steps)


# -- Schur / Hindman on [1..N] ---------------------------------------------

@dataclass(frozen=True)
class HindmanResult:
    color: int
    generators: tuple

    @property
    def elements(self) -> list[int]:
        return sorted({sum(c) for n in range(1, len(self.generators) + 1)
                       for c in itertools.combinations(self.generators, n)})


def hindman_check(coloring: Sequence[int], k: int = 2, schur: bool = False) -> Optional[HindmanResult]:
    """Look for a monochromatic finite-sums set in a colouring of ``1..N``.

    ``coloring[i]`` is the colour of ``i + 1``.  Generators are distinct, as
    in an FP-set; ``schur=True`` (``k = 2`` only) also admits ``x = y``, i.e.
    the classical Schur triple ``{x, x, 2x}``.
    """
    n = len(coloring)
    if k < 1:
        raise FPError("k must be >= 1")
    if schur and k != 2:
        raise FPError("schur mode is the k = 2 finite-sums case")
    col = (None,) + tuple(coloring)

    def extend(start: int, gens: tuple, sums: list, c: int):
        if len(gens) == k:
            return HindmanResult(c, gens)
        lo = start if not (schur and gens) else gens[-1]
        for x in range(lo, n + 1):
            if col[x] != c:
                continue
            new = [s + x for s in sums] + [x]
            if all(v <= n and col[v] == c for v in new):
                found = extend(x + 1, gens + (x,), sums + new, c)
                if found is not None:
                    return found
        return None

    for c in sorted(set(coloring)):
        found = extend(1, (), [], c)
        if found is not None:
            return found
    return None


def all_colorings(n: int, colors: int) -> Iterable[tuple]:
    return itertools.product(range(colors), repeat=n)


def hindman_sweep(n: int, colors: int, k: int = 2, schur: bool = False):
    """``(forced, first_coloring_without_witness)`` over every colouring of ``1..n``."""
    for coloring in all_colorings(n, colors):
        if hindman_check(coloring, k, schur) is None:
            return False, coloring
    return True, None
