import pytest
from hypothesis import given, strategies as st

from affine_biclosed import _kernels_py, roots as R
from affine_biclosed.affine import (AffineRoot, EPSet, base_level, closure, closure_window,
                                    is_closed_window, is_positive, safe_window)

TYPES = list(R.TYPES)


@st.composite
def positive_roots(draw, tag, max_level=3):
    d = draw(st.sampled_from(R.get(tag).roots))
    return AffineRoot(d, draw(st.integers(base_level(d), max_level)))


@st.composite
def tagged_gens(draw, max_size=4):
    tag = draw(st.sampled_from(TYPES))
    gens = draw(st.lists(positive_roots(tag), min_size=0, max_size=max_size))
    return tag, gens


@st.composite
def tagged_epsets(draw):
    tag = draw(st.sampled_from(TYPES))
    ivs = {}
    for d in draw(st.sets(st.sampled_from(R.get(tag).roots), max_size=4)):
        lo = draw(st.integers(base_level(d), 4))
        hi = draw(st.one_of(st.none(), st.integers(lo, 6)))
        ivs[d] = [(lo, hi)]
    return EPSet(tag, ivs)


def test_positivity_convention():
    assert is_positive(AffineRoot((1, 0), 0))
    assert not is_positive(AffineRoot((-1, 0), 0))
    assert is_positive(AffineRoot((-1, 0), 1))


@given(tagged_gens())
def test_closure_agrees_with_windowed_fixpoint(case):
    tag, gens = case
    hull = closure(tag, gens)
    n = safe_window(gens)
    assert hull.truncate(n) == closure_window(tag, gens, n)
    assert all(g in hull for g in gens)


@given(tagged_gens(max_size=3))
def test_closure_is_idempotent_and_closed(case):
    tag, gens = case
    hull = closure(tag, gens)
    assert closure(tag, hull) == hull
    n = safe_window(gens)
    assert is_closed_window(tag, hull.truncate(n), n)


@given(tagged_epsets(), st.data())
def test_set_algebra_matches_truncated_sets(a, data):
    tag = a.tag
    b = data.draw(tagged_epsets().filter(lambda e: e.tag == tag))
    n = 9
    ta, tb = a.truncate(n), b.truncate(n)
    assert a.union(b).truncate(n) == ta | tb
    assert a.intersection(b).truncate(n) == ta & tb
    assert a.difference(b).truncate(n) == ta - tb
    assert a.includes(b) == (a.union(b) == a)
    assert a.complement().complement() == a
    assert a.union(a.complement()) == EPSet.full(tag)


@given(tagged_epsets())
def test_epset_json_roundtrip(a):
    assert EPSet.from_json(a.tag, a.to_json()) == a


@given(tagged_gens(max_size=3), st.integers(1, 12))
def test_compiled_and_python_kernels_agree(case, window):
    from affine_biclosed import _backend
    from affine_biclosed.affine import _kernel_tables

    tag, gens = case
    dirs, idx, nd, opposite, base, offsets, targets, p1s, p2s, qs = _kernel_tables(tag)
    seeds = [(idx[r.dir], r.level) for r in gens if r.level <= window]
    args = (nd, opposite, base, offsets, targets, p1s, p2s, qs, seeds, window)
    assert set(_kernels_py.window_closure(*args)) == set(_backend.window_closure(*args))


def test_opposite_pair_closes_to_two_rays():
    gens = [AffineRoot((1, 0), 0), AffineRoot((-1, 0), 1)]
    hull = closure("A2", gens)
    assert hull.ray_directions() == {(1, 0), (-1, 0)}
    assert hull == EPSet.hat("A2", [(1, 0), (-1, 0)])


def test_windowed_closure_rejects_negative_generator():
    with pytest.raises(ValueError):
        closure_window("A2", [AffineRoot((-1, 0), 0)], 5)
