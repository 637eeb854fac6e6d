from functools import lru_cache

import pytest
from hypothesis import given, strategies as st

from affine_biclosed import lattice, roots as R, words
from affine_biclosed.affine import EPSet, is_biclosed_window
from affine_biclosed.lattice import BElement

TYPES = list(R.TYPES)


@lru_cache(maxsize=None)
def sample(tag):
    return lattice.sample_elements(tag, 3)


@st.composite
def element_pairs(draw):
    tag = draw(st.sampled_from(TYPES))
    return tag, draw(st.sampled_from(sample(tag))), draw(st.sampled_from(sample(tag)))


@given(element_pairs())
def test_join_is_a_biclosed_least_upper_bound_in_the_sample(case):
    tag, b1, b2 = case
    j = lattice.join(b1, b2)
    assert is_biclosed_window(j.epset, 8)
    assert b1 <= j and b2 <= j
    for c in sample(tag):
        if b1 <= c and b2 <= c:
            assert j <= c


@given(element_pairs())
def test_meet_is_a_biclosed_greatest_lower_bound_in_the_sample(case):
    tag, b1, b2 = case
    m = lattice.meet(b1, b2)
    assert is_biclosed_window(m.epset, 8)
    assert m <= b1 and m <= b2
    for c in sample(tag):
        if c <= b1 and c <= b2:
            assert c <= m


@given(element_pairs())
def test_commutativity_and_absorption(case):
    _, b1, b2 = case
    assert lattice.join(b1, b2) == lattice.join(b2, b1)
    assert lattice.meet(b1, b2) == lattice.meet(b2, b1)
    assert lattice.join(b1, lattice.meet(b1, b2)) == b1
    assert lattice.meet(b1, lattice.join(b1, b2)) == b1


@given(element_pairs())
def test_complement_is_order_reversing(case):
    _, b1, b2 = case
    if b1 <= b2:
        assert lattice.complement(b2) <= lattice.complement(b1)


@pytest.mark.parametrize("tag", TYPES)
def test_unary_laws_on_the_whole_sample(tag):
    top, bot = BElement.top(tag), BElement.bottom(tag)
    for b in sample(tag):
        c = lattice.complement(b)
        assert lattice.complement(c) == b
        assert lattice.join(b, c) == top
        assert lattice.meet(b, c) == bot
        assert lattice.join(b, b) == b
        assert BElement.from_json(tag, b.to_json()) == b


@given(element_pairs())
def test_finite_join_matches_closure_of_union(case):
    tag, b1, b2 = case
    if not (b1.kind == "inv" and b2.kind == "inv" and b1.epset.is_finite() and b2.epset.is_finite()):
        return
    direct = lattice.finite_closure_join([b1.word, b2.word])
    if direct is not None:
        assert lattice.join(b1, b2) == direct


def test_inv_and_coinv_of_a_maximal_word_coincide():
    x = words.maximal_elements("A2")[0]
    b = BElement.coinv(x)
    assert b.kind == "inv"
    assert b.epset == words.inversion_set(x).complement()


def test_chain_union_and_intersection():
    xs = [words.finite("A2", w) for w in ((), (0,), (0, 1), (0, 1, 2))]
    chain = [BElement.inv(x) for x in xs]
    assert lattice.chain_union(chain) == chain[-1]
    assert lattice.chain_intersection(chain) == chain[0]
    with pytest.raises(ValueError):
        lattice.chain_union([BElement.inv(words.finite("A2", (0,))),
                             BElement.inv(words.finite("A2", (1,)))])


@pytest.mark.parametrize("window", [6, 10])
def test_quasi_positive_system_lacks_a_meet(window):
    got = lattice.quasi_positive_counterexample(window)
    assert got["inputs_biclosed"]
    assert got["verdicts"] == [True, True, True]


def test_top_and_bottom():
    assert BElement.top("G2").epset == EPSet.full("G2")
    assert BElement.bottom("G2").epset.is_empty()
