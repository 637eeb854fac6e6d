from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from affine_biclosed import roots as R, words
from affine_biclosed.affine import EPSet, root_sequence

TYPES = list(R.TYPES)
MAX_LEN = 7


@lru_cache(maxsize=None)
def finite_elements(tag):
    """Every element up to MAX_LEN with its inversion set as a plain frozenset."""
    return [(x, frozenset(root_sequence(tag, x.w))) for x in words.elements_up_to(tag, MAX_LEN)]


@st.composite
def finite_pairs(draw, max_len=4):
    tag = draw(st.sampled_from(TYPES))
    pool = [x for x, _ in finite_elements(tag) if len(x.w) <= max_len]
    return tag, draw(st.sampled_from(pool)), draw(st.sampled_from(pool))


@pytest.mark.parametrize("tag,count", [("A2", 6), ("B2", 8), ("G2", 12)])
def test_maximal_element_counts(tag, count):
    ms = words.maximal_elements(tag)
    assert len(ms) == count
    hats = {words.inversion_set(x) for x in ms}
    assert hats == {EPSet.hat(tag, psi) for psi in R.get(tag).positive_systems()}


@given(finite_pairs())
def test_meet_is_greatest_lower_bound_by_enumeration(case):
    tag, x, y = case
    ix, iy = words.inversion_set(x), words.inversion_set(y)
    below = [s for _, s in finite_elements(tag) if s <= ix.truncate(99) and s <= iy.truncate(99)]
    best = max(below, key=len)
    assert all(s <= best for s in below)
    assert words.inversion_set(words.meet(x, y)).truncate(99) == best


@given(finite_pairs(max_len=3))
def test_join_is_least_upper_bound_by_enumeration(case):
    tag, x, y = case
    ix, iy = words.inversion_set(x), words.inversion_set(y)
    above = [s for _, s in finite_elements(tag) if ix.truncate(99) <= s and iy.truncate(99) <= s]
    try:
        j = words.join_bounded([x, y])
    except words.Unbounded:
        assert not above
        return
    ij = words.inversion_set(j)
    assert ij.includes(ix) and ij.includes(iy)
    for s in above:
        assert ij.truncate(99) <= s or not ij.is_finite()
    if ij.is_finite() and len(ij) <= MAX_LEN:
        assert ij.truncate(99) in above


@given(finite_pairs())
def test_weak_order_is_inversion_set_inclusion(case):
    tag, x, y = case
    assert words.leq(x, y) == words.inversion_set(y).includes(words.inversion_set(x))


@given(st.sampled_from(TYPES), st.data())
def test_word_json_roundtrip(tag, data):
    x = data.draw(st.sampled_from([x for x, _ in finite_elements(tag)]))
    assert words.from_json(tag, words.to_json(x)) == x
    for L in ((), (0,), (1,)):
        y = words.infinite(tag, x.w, L)
        assert words.from_json(tag, words.to_json(y)) == y


@pytest.mark.parametrize("tag", TYPES)
def test_inversion_set_of_finite_word_is_its_root_sequence(tag):
    for x, s in finite_elements(tag):
        assert words.inversion_set(x).truncate(99) == s
        assert len(s) == len(x.w)


def test_periodic_word_and_prefix_chain():
    x = words.from_periodic("A2", [], [0, 1, 2])
    chain = words.prefix_chain(x, 6)
    sets = [words.inversion_set(words.finite("A2", w)) for w in chain]
    for a, b in zip(sets, sets[1:]):
        assert b.includes(a) and len(b) == len(a) + 1
    assert all(words.inversion_set(x).includes(s) for s in sets)


def test_join_of_two_opposite_maxima_is_unbounded():
    ms = words.maximal_elements("A2")
    with pytest.raises(words.Unbounded):
        words.join_bounded([ms[0], ms[1]])


def test_strictly_comparable_periodic_pair_and_their_meet():
    w1 = words.from_periodic("A2", [], [0, 1, 2])
    w2 = words.from_periodic("A2", [], [0, 1, 0, 2])
    assert words.leq(w1, w2) and not words.leq(w2, w1)
    assert words.meet(w1, w2) == w1
    assert words.join_bounded([w1, w2]) == w2


def test_join_of_the_two_simple_reflections_is_the_longest_finite_element():
    j = words.join_bounded([words.finite("A2", (0,)), words.finite("A2", (1,))])
    assert j == words.finite("A2", (0, 1, 0)) == words.finite("A2", (1, 0, 1))


def test_max_word_below_examples():
    assert words.max_word_below(EPSet.empty("A2")) == words.identity("A2")
    x = words.finite("A2", (0, 1))
    assert words.max_word_below(words.inversion_set(x)) == x
    top = words.max_word_below(EPSet.full("A2"))
    assert top in words.maximal_elements("A2")
