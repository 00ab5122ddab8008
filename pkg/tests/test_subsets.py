import math

import pytest
from hypothesis import given, settings, strategies as st

from groupsize import groups as gr
from groupsize import subsets as ss
from groupsize.poly import Poly, parse_poly
from groupsize.subsets import (
    Blocks, Complement, Cylinder, Finite, FPSet, Intersection, Residues, Sequence, Translate,
    Union, Z, cylinder_contains, finiteness, member, translate, window,
)

F2 = gr.parse_group("F_2")
Z2 = gr.parse_group("Z^2")


def test_member_examples():
    assert member(Residues(4, {0}), 8)
    assert not member(Sequence("squares"), 10)
    assert member(FPSet(Z, (1, 2, 4)), 7)


def test_sequences_against_direct_definitions():
    N = 5000
    sq = {k * k for k in range(80)}
    pw = {3**k for k in range(10)}
    fa = {math.factorial(k) for k in range(9)}
    for x in range(-20, N):
        assert member(Sequence("squares"), x) == (x in sq)
        assert member(Sequence("powers", 3), x) == (x in pw)
        assert member(Sequence("factorials"), x) == (x in fa)


def test_gap_sequence_by_recurrence():
    gap = parse_poly("2k+1")
    terms, s = set(), 0
    for k in range(60):
        terms.add(s)
        s += gap(k)
    A = Sequence("gaps", gap=gap)
    assert all(member(A, x) == (x in terms) for x in range(0, 3000))


def test_blocks_by_union_of_intervals():
    B = Blocks(parse_poly("k^2"), parse_poly("k"))
    inside = {x for k in range(40) for x in range(k * k, k * k + k)}
    assert all(member(B, x) == (x in inside) for x in range(-5, 1500))


def test_invalid_constructions():
    with pytest.raises(ss.SubsetError):
        Residues(0, {0})
    with pytest.raises(ss.SubsetError):
        Residues(3, {3})
    with pytest.raises(ss.SubsetError):
        Sequence("gaps", gap=parse_poly("k - 2"))
    with pytest.raises(ss.SubsetError):
        Sequence("powers", 1)
    with pytest.raises(ss.SubsetError):
        Blocks(parse_poly("k"), parse_poly("2"))  # overlapping
    with pytest.raises(ss.SubsetError):
        Residues(2, {0}, F2)


def test_window_examples():
    assert window(Residues(2, {0}), 2).bits == (1, 0, 0, 1, 1)
    assert window(Finite(Z, (3,)), 1).bits == (0, 0, 0)
    assert window(Complement(Residues(2, {0})), 2).bits == (0, 1, 1, 0, 0)


def test_window_prefix_consistent():
    A = Union(Sequence("squares"), Residues(5, {2}))
    for r in range(8):
        small, big = window(A, r).bits, window(A, r + 1).bits
        assert big[: len(small)] == small


def test_cylinders():
    E = Residues(2, {0})
    assert cylinder_contains(Cylinder(Z, {0}, ()), E)
    assert cylinder_contains(Cylinder(Z, (), {1}), E)
    with pytest.raises(ss.SubsetError):
        Cylinder(Z, {1}, {1})


def test_local_view_refuses_outside_reads():
    view = ss.LocalView(Residues(2, {0}), 3)
    assert 2 in view
    with pytest.raises(ss.LocalityError):
        _ = 4 in view


def test_translate_examples():
    odd = translate(1, Residues(2, {0}))
    assert all(member(odd, x) == (x % 2 == 1) for x in range(-10, 10))
    A = Sequence("squares")
    assert translate(0, A) == A
    t = translate("a", Finite(F2, ("", "b")))
    assert set(t.elements) == {"a", "ab"}


def test_translate_is_left_multiplication_in_free_group():
    A = Finite(F2, ("b", "ab"))
    t = Translate("B", A)
    assert not member(t, "b")
    assert member(t, gr.multiply(F2, "B", "ab"))


def test_finiteness_examples():
    assert finiteness(Finite(Z, (1, 2))) == ss.Finiteness(ss.PROVED_FINITE, 2)
    assert finiteness(Residues(3, {1})).infinite
    sq = Sequence("squares")
    assert finiteness(Intersection(sq, Translate(5, sq))).status == ss.UNKNOWN
    assert finiteness(FPSet(Z, (1, 2, 4))).bound == 7
    assert finiteness(Residues(3, ())).finite


def test_periodic_form_of_residue_boolean_combinations():
    A = Union(Residues(3, {0}), Intersection(Residues(2, {1}), Finite(Z, (1, 2, 3))))
    spec = ss.periodic_form(A)
    assert all((x in spec) == member(A, x) for x in range(-40, 40))


def test_describe_mirrors_dsl():
    assert ss.describe(Residues(2, {0})) == "residues(2; 0)"
    assert ss.describe(Sequence("powers", 2)) == "powers(2)"


def test_opaque_predicates_have_a_budget():
    ss.register_opaque("mult7", lambda group, g: g % 7 == 0)
    A = ss.Opaque(Z, "mult7", 50)
    assert member(A, 14)
    with pytest.raises(ss.SubsetError):
        member(A, 700)


# -- properties ---------------------------------------------------------------

residues = st.builds(
    lambda m, rs: Residues(m, frozenset(r % m for r in rs)),
    st.integers(1, 6), st.lists(st.integers(0, 5), max_size=4),
)
finites = st.builds(lambda xs: Finite(Z, tuple(xs)), st.lists(st.integers(-8, 8), max_size=5))
leaves = st.one_of(residues, finites, st.just(Sequence("squares")), st.just(Sequence("powers", 2)))
exprs = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(Union, kids, kids), st.builds(Intersection, kids, kids),
        st.builds(Complement, kids), st.builds(Translate, st.integers(-5, 5), kids),
    ),
    max_leaves=5,
)


@given(exprs, exprs, st.integers(0, 8))
@settings(max_examples=80)
def test_de_morgan_on_windows(a, b, r):
    lhs = window(Complement(Union(a, b)), r).bits
    ca, cb = window(Complement(a), r).bits, window(Complement(b), r).bits
    assert lhs == tuple(x & y for x, y in zip(ca, cb))


@given(exprs, st.integers(-6, 6), st.integers(0, 8))
@settings(max_examples=100)
def test_translate_round_trip(A, t, r):
    back = translate(-t, translate(t, A))
    assert window(back, r).bits == window(A, r).bits


@given(exprs, st.integers(-6, 6))
@settings(max_examples=60)
def test_translate_semantics(A, t):
    T = translate(t, A)
    assert all(member(T, x) == member(A, x - t) for x in range(-15, 16))


@given(exprs)
@settings(max_examples=80)
def test_finiteness_is_sound(A):
    f = finiteness(A)
    spec = ss.periodic_form(A)
    if spec is not None:
        if f.finite:
            assert spec.is_finite() and spec.cardinality() <= f.bound
        if f.infinite:
            assert not spec.is_finite()


@given(st.sets(st.integers(-4, 4), max_size=4), st.sets(st.integers(-4, 4), max_size=4), exprs)
@settings(max_examples=60)
def test_cylinder_is_local(pos, neg, A):
    neg = neg - pos
    c = Cylinder(Z, pos, neg)
    w = window(A, 4)
    assert cylinder_contains(c, A) == c.holds(ss.WindowView(A, w))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_poly_parse_round_trip(coeffs):
    p = Poly(tuple(coeffs))
    assert parse_poly(str(p)) == p


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
def test_poly_positivity_is_exact(coeffs):
    p = Poly(tuple(coeffs))
    sampled = all(p(k) > 0 for k in range(200))
    if p.min_on_naturals(strict=True):
        assert sampled
    elif p.leading > 0 or p.degree == 0:
        # a failure must be visible below the root bound
        assert not all(p(k) > 0 for k in range(p.root_bound() + 1))


def test_lattice_and_free_finite_sets():
    A = Finite(Z2, ((1, 0), (0, 1)))
    assert member(A, (1, 0)) and not member(A, (1, 1))
    B = Union(Finite(F2, ("a",)), Translate("b", Finite(F2, ("",))))
    assert member(B, "b") and member(B, "a") and not member(B, "ab")
