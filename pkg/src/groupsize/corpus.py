"""The shipped corpus: eventually periodic subsets of Z and a few sequence
and block sets that no exact rule fully covers.

``python -m groupsize.corpus`` prints it as a DSL file.
"""

from __future__ import annotations

from . import subsets as ss
from .dsl import parse

PERIODIC = """\
group Z
set even = residues(2; 0)
set odd = residues(2; 1)
set r3 = residues(3; 0)
set r3b = residues(3; 0, 1)
set r4 = residues(4; 0)
set r4b = residues(4; 0, 2)
set r4c = residues(4; 0, 1)
set r5 = residues(5; 0, 2, 3)
set r6 = residues(6; 0)
set empty = finite()
set single = finite(3)
set pair = finite(0, 5)
set full = compl(finite())
set cofinite = compl(finite(0, 1, 2))
set nat = periodic(0; 0:; 1)
set negative = periodic(1; 0:; 0)
set even_right = periodic(0; 0:; 10)
set mixed = periodic(100; 0:1101; 1)
set mixed2 = periodic(10; -3:0110; 011)
set r3_plus = union(r3, finite(1, 2))
set even_nat = inter(even, nat)
set shifted = translate(5, residues(4; 1))
set not_r3 = compl(r3)
set strips = blocks(5k, 2)
set step3 = gaps(3)
set fp3 = fp(1, 10, 100)
"""

SEQUENCES = """\
set squares = squares
set pow2 = powers(2)
set pow3 = powers(3)
set fact = factorials
set odd_gaps = gaps(2k + 1)
set tri = gaps(k + 1)
set blocks_sq = blocks(k^2, k)
set r3_squares = union(r3, squares)
set even_squares = inter(squares, even)
"""


def periodic_corpus() -> dict:
    """Name -> normalized PeriodicSpec for every eventually periodic entry."""
    prog = parse(PERIODIC)
    out = {}
    for name, A in prog.sets.items():
        spec = ss.periodic_form(A)
        if spec is None:
            raise AssertionError(f"corpus entry {name} is not eventually periodic")
        out[name] = spec
    return out


def full_corpus() -> dict:
    """Name -> SubsetExpr for the whole corpus."""
    return dict(parse(PERIODIC + SEQUENCES).sets)


if __name__ == "__main__":
    print(PERIODIC + SEQUENCES, end="")
