from hypothesis import given, settings, strategies as st

from groupsize.periodic import PeriodicSpec

bits = lambda n: st.lists(st.integers(0, 1), min_size=n, max_size=n).map(tuple)
words = st.integers(1, 6).flatmap(bits)
specs = st.builds(PeriodicSpec, words, st.integers(0, 6).flatmap(bits), st.integers(-6, 6), words)
SPAN = range(-60, 60)


def same_set(a, b):
    return all((x in a) == (x in b) for x in SPAN)


def test_membership_by_hand():
    s = PeriodicSpec((0,), (1, 0, 1), 0, (1, 0))
    assert [x for x in range(-3, 8) if x in s] == [0, 2, 4, 6]
    half = PeriodicSpec((0,), (), 0, (1,))
    assert 0 in half and -1 not in half


def test_words_are_anchored_at_residue_zero():
    s = PeriodicSpec((1, 0, 0), (), 0, (0,))
    assert -3 in s and -1 not in s and -2 not in s


def test_constructors():
    r = PeriodicSpec.from_residues(4, {1, 3})
    assert r.left == r.right == (0, 1) and r.center == ()
    f = PeriodicSpec.from_finite([5, 2])
    assert f.is_finite() and f.cardinality() == 2 and f.lo == 2
    assert PeriodicSpec.from_finite([]).is_normalized()


@given(specs)
@settings(max_examples=200)
def test_normalization_preserves_set_and_is_idempotent(s):
    n = s.normalized()
    assert same_set(s, n)
    assert n.normalized() == n


@given(specs, specs)
@settings(max_examples=150)
def test_normal_form_is_canonical(a, b):
    if same_set(a, b) and a.period <= 6 and b.period <= 6:
        # two sets agreeing on a window much wider than their data are equal
        assert a.normalized() == b.normalized()


@given(specs, st.integers(-9, 9))
@settings(max_examples=150)
def test_translate(s, t):
    T = s.translate(t)
    assert all((x in T) == (x - t in s) for x in range(-40, 40))


@given(specs, specs)
@settings(max_examples=150)
def test_boolean_algebra(a, b):
    u, i, c = a.union(b), a.intersection(b), a.complement()
    for x in SPAN:
        assert (x in u) == (x in a or x in b)
        assert (x in i) == (x in a and x in b)
        assert (x in c) == (x not in a)


@given(specs)
def test_finiteness_matches_tails(s):
    far = [x for x in list(range(-200, -150)) + list(range(150, 200)) if x in s]
    assert s.is_finite() == (not far)
