import itertools

import pytest
from hypothesis import given, settings, strategies as st

from groupsize import groups as gr
from groupsize import subsets as ss
from groupsize.fp import (
    FPError, FPWitness, contains_fp, contains_pws_fp, fp_elements, hindman_check, hindman_sweep,
)

Z = ss.Z
F2 = gr.parse_group("F_2")


def schur_free(coloring, distinct):
    """Reference: no monochromatic x, y, x + y (x < y if distinct)."""
    n = len(coloring)
    col = lambda v: coloring[v - 1]
    for x in range(1, n + 1):
        for y in range(x + (1 if distinct else 0), n + 1 - x):
            if col(x) == col(y) == col(x + y):
                return False
    return True


def test_fp_of_powers_of_two():
    for k in range(1, 11):
        elems = [x for x, _ in fp_elements(Z, [2**i for i in range(k)])]
        assert len(elems) == 2**k - 1
        assert sorted(elems) == list(range(1, 2**k))


def test_fp_order_and_shifts():
    out = fp_elements(Z, (1, 10, 100), (0, 5, 7))
    assert [idx for _, idx in out] == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]
    assert [x for x, _ in out] == [1, 15, 107, 16, 108, 117, 118]


def test_fp_in_free_group_respects_index_order():
    out = dict((idx, x) for x, idx in fp_elements(F2, ("a", "b")))
    assert out[(0, 1)] == "ab"


def test_fp_validation():
    with pytest.raises(FPError):
        fp_elements(Z, ())
    with pytest.raises(FPError):
        fp_elements(Z, (1, 1))
    with pytest.raises(FPError):
        fp_elements(Z, range(25))
    with pytest.raises(FPError):
        fp_elements(Z, (1, 2), (0,))


def test_contains_fp_examples():
    w = contains_fp(ss.full(Z), 3, 4)
    assert w is not None and w.check(lambda x: True)
    assert contains_fp(ss.Residues(2, {1}), 2, 6) is None  # odd + odd is even
    w = contains_fp(ss.FPSet(Z, (1, 10, 100)), 3, 100)
    assert w.generators == (1, 10, 100)


def test_contains_pws_fp():
    A = ss.Translate(5, ss.FPSet(Z, (1, 2, 4)))
    w = contains_pws_fp(A, 3, 12)
    assert w is not None and w.check(lambda x: ss.member(A, x))
    assert contains_pws_fp(ss.Finite(Z, (0,)), 2, 6) is None
    odd = ss.Residues(2, {1})
    w = contains_pws_fp(odd, 2, 4)
    assert w.check(lambda x: x % 2 == 1)


def test_witness_elements_are_distinct():
    assert FPWitness(Z, (1, -1)).check(lambda x: True)  # 1, -1, 0
    w = FPWitness(Z, (1, 2), (1, 0))  # 1 + 1 collides with 2 + 0
    assert not w.check(lambda x: True)


def test_schur_desk_scale():
    forced, bad = hindman_sweep(5, 2, schur=True)
    assert forced and bad is None
    assert hindman_check((0, 1, 1, 0), schur=True) is None
    assert hindman_check((0,), schur=True) is None


@pytest.mark.parametrize("n", range(1, 10))
def test_sweeps_against_reference(n):
    for distinct in (False, True):
        bad = [c for c in itertools.product(range(2), repeat=n) if schur_free(c, distinct)]
        forced, first = hindman_sweep(n, 2, schur=not distinct)
        assert forced == (not bad)
        assert first == (bad[0] if bad else None)


def test_distinct_mode_threshold():
    assert not hindman_sweep(8, 2)[0]
    assert hindman_sweep(9, 2)[0]


@given(st.lists(st.integers(0, 2), min_size=1, max_size=14))
@settings(max_examples=150)
def test_hindman_result_is_monochromatic(coloring):
    res = hindman_check(coloring, k=3)
    if res is not None:
        assert len(set(res.generators)) == 3
        assert all(v <= len(coloring) and coloring[v - 1] == res.color for v in res.elements)


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=6, unique=True))
def test_fp_count_with_sidon_like_generators(gens):
    elems = [x for x, _ in fp_elements(Z, gens)]
    sums = [sum(c) for r in range(1, len(gens) + 1) for c in itertools.combinations(gens, r)]
    assert sorted(elems) == sorted(sums)
