import pytest
from hypothesis import given, strategies as st

from affine_biclosed import roots as R, words
from affine_biclosed.affine import AffineRoot, EPSet, closure, is_biclosed_window
from affine_biclosed.biclosed import (BiclosedCanonical, NotFinitelyGenerated, act, act_formula,
                                      base_set, canonical, generators, is_finitely_generated,
                                      missing_root, orthogonal_pairs, recognize)

TYPES = list(R.TYPES)


REDUCED = {tag: words.all_reduced_words(tag, 5) for tag in TYPES}


@st.composite
def forms(draw, max_len=5):
    tag = draw(st.sampled_from(TYPES))
    w = tuple(draw(st.sampled_from([u for u in REDUCED[tag] if len(u) <= max_len])))
    L, K = draw(st.sampled_from(orthogonal_pairs(tag)))
    return tag, w, L, K


@given(forms())
def test_action_by_simple_steps_matches_direct_formula(f):
    tag, w, L, K = f
    g = base_set(tag, L, K)
    assert act(w, g) == act_formula(w, g)


@given(st.sampled_from(TYPES), st.lists(st.integers(0, 2), max_size=6), st.data())
def test_action_of_any_word_commutes_with_complement(tag, w, data):
    L, K = data.draw(st.sampled_from(orthogonal_pairs(tag)))
    g = base_set(tag, L, K)
    assert act(w, g.complement()) == act(w, g).complement()


@given(forms())
def test_action_commutes_with_complement(f):
    tag, w, L, K = f
    g = base_set(tag, L, K)
    assert act(w, g.complement()) == act(w, g).complement()


@given(forms(max_len=4))
def test_translates_are_biclosed(f):
    tag, w, L, K = f
    assert is_biclosed_window(canonical(tag, w, L, K).epset, 10)


@given(forms())
def test_recognize_inverts_canonical(f):
    tag, w, L, K = f
    bc = canonical(tag, w, L, K)
    assert recognize(bc.epset) == bc
    assert BiclosedCanonical.from_json(tag, bc.to_json()) == bc


def test_canonical_word_is_shortlex_minimal_on_a_redundant_input():
    # s0 s0 acts trivially, so the normal form forgets it
    assert canonical("A2", (0, 0), (0, 1), ()).w == ()


def test_periodic_word_canonicalizes_to_identity_with_beta_kept():
    x = words.from_periodic("A2", [], [0, 1, 2])
    bc = recognize(words.inversion_set(x))
    assert (bc.w, bc.L, bc.K) == ((), (1,), ())
    assert bc.epset == EPSet.hat("A2", [(1, 0), (1, 1)])


def test_recognize_rejects_a_non_biclosed_set():
    # alpha and beta without alpha+beta is not closed
    s = EPSet.from_roots("A2", [AffineRoot((1, 0), 0), AffineRoot((0, 1), 0)])
    with pytest.raises(ValueError):
        recognize(s)


@given(forms(max_len=4))
def test_generators_regenerate_or_truncations_fail(f):
    tag, w, L, K = f
    bc = canonical(tag, w, L, K)
    if is_finitely_generated(bc):
        assert closure(tag, generators(bc)) == bc.epset
    else:
        with pytest.raises(NotFinitelyGenerated):
            generators(bc)
        for t in (2, 4, 6):
            root, regenerated = missing_root(bc, t)
            assert root in bc.epset and root not in regenerated
            assert regenerated != bc.epset


@pytest.mark.parametrize("tag", TYPES)
def test_untranslated_obstruction_sits_one_above_the_truncation(tag):
    # for w = e the missing root is alpha_i + (t_i + 1) delta with t_i read off the truncation
    seen = 0
    for L, K in orthogonal_pairs(tag):
        bc = canonical(tag, (), L, K)
        if is_finitely_generated(bc):
            continue
        for t in (2, 4, 6):
            root, _ = missing_root(bc, t)
            t_i = max(r.level for r in bc.epset.truncate(t) if r.dir == root.dir)
            assert root.level == t_i + 1
            assert R.SIMPLE.index(root.dir) not in L
            seen += 1
    assert seen > 0


def test_finite_inversion_set_is_finitely_generated():
    bc = canonical("B2", (0, 2, 1), (0, 1), ())
    assert is_finitely_generated(bc)
    assert bc.epset.is_finite()
