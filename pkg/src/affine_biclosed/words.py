"""Finite and infinite reduced words of the affine Weyl group.

An element of W-bar is a ``BiclosedCanonical`` with K empty: L = Pi gives a
finite word w (inversion set Phi_w = w . empty set), L a proper subset gives
the infinite word with inversion set w . Phi^+_{L, empty}.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from . import roots as R
from .affine import (EPSet, INFINITE, Word, apply_word, base_level, closure,
                     finite_part, is_reduced, simple_roots)
from .biclosed import (BiclosedCanonical, RecognitionError, act, act_simple, canonical,
                       finite_word_of, inversion_set_finite, recognize, to_epset)

WBar = BiclosedCanonical
FULL = (0, 1)


class Unbounded(ValueError):
    """The family has no common upper bound in W-bar."""


def finite(tag: str, word: Sequence[int]) -> WBar:
    """The finite element with the given reduced word, in shortlex form."""
    inv = inversion_set_finite(tag, tuple(word))
    return WBar(tag, finite_word_of(inv), FULL, ())


def infinite(tag: str, w: Sequence[int], L: Sequence[int]) -> WBar:
    L = tuple(sorted(set(L)))
    if L == FULL:
        raise ValueError("an infinite word needs L to be a proper subset of Pi")
    return canonical(tag, tuple(w), L, ())


def identity(tag: str) -> WBar:
    return WBar(tag, (), FULL, ())


def is_finite(x: WBar) -> bool:
    return x.L == FULL


def inversion_set(x: WBar) -> EPSet:
    if x.K:
        raise ValueError("not an element of W-bar (K must be empty)")
    return to_epset(x)


def as_wbar(gamma: EPSet) -> WBar:
    """The element x with Phi_x = gamma; RecognitionError if gamma is no inversion set."""
    bc = recognize(gamma)
    if bc.K:
        raise RecognitionError("set is the complement of an inversion set, not one")
    return bc


def to_json(x: WBar):
    if is_finite(x):
        return list(x.w)
    return {"w": list(x.w), "L": list(x.L)}


def from_json(tag: str, obj) -> WBar:
    if isinstance(obj, list):
        return finite(tag, obj)
    if isinstance(obj, dict) and "w" in obj:
        L = obj.get("L", [])
        if tuple(sorted(L)) == FULL:
            return finite(tag, obj["w"])
        return infinite(tag, obj["w"], L)
    raise ValueError(f"malformed word {obj!r}")


# -- periodic expressions ------------------------------------------------------

def _finite_order(tag: str, word: Sequence[int]) -> int:
    k, cur = 1, list(word)
    while any(finite_part(tag, cur, s) != s for s in R.SIMPLE):
        k += 1
        cur = cur + list(word)
        if k > 12:
            raise AssertionError("finite Weyl group element of order > 12")
    return k


def from_periodic(tag: str, prefix: Sequence[int], period: Sequence[int]) -> WBar:
    """Canonical form of the infinite reduced expression prefix . period . period ..."""
    prefix, period = tuple(prefix), tuple(period)
    if not period:
        raise ValueError("period must be nonempty")
    translation = period * _finite_order(tag, period)
    if not is_reduced(tag, translation * 2):
        raise ValueError("periodic expression is not reduced")
    # powers of a translation grow every direction it crosses without bound
    tail = EPSet.hat(tag, inversion_set_finite(tag, translation).directions())
    if not is_reduced(tag, prefix):
        raise ValueError("prefix is not reduced")
    prefix_inverse = inversion_set_finite(tag, prefix[::-1])
    if not prefix_inverse.isdisjoint(tail):
        raise ValueError("prefix followed by the periodic tail is not reduced")
    return as_wbar(act(prefix, tail))


def prefix_chain(x: WBar, length: int) -> List[Word]:
    """Reduced prefixes of x, always extending by the lowest-level available root."""
    tag = x.tag
    target = inversion_set(x)
    simple = simple_roots(tag)
    word: List[int] = []
    out = [()]
    inv = EPSet.empty(tag)
    for _ in range(length):
        best = None
        for s in range(3):
            r = apply_word(tag, word, simple[s])
            if r.level >= base_level(r.dir) and r in target and r not in inv:
                key = (r.level, s)
                if best is None or key < best[0]:
                    best = (key, s, r)
        if best is None:
            break
        word.append(best[1])
        inv = inv.union(EPSet.from_roots(tag, [best[2]]))
        out.append(tuple(word))
    return out


# -- products and order --------------------------------------------------------

def s_times(s: int, x: WBar) -> WBar:
    return as_wbar(act_simple(s, inversion_set(x)))


def u_times(u: Sequence[int], x: WBar) -> WBar:
    return as_wbar(act(tuple(u), inversion_set(x)))


def leq(x: WBar, y: WBar) -> bool:
    return inversion_set(y).includes(inversion_set(x))


def orthogonal(x: WBar, y: WBar) -> bool:
    return inversion_set(x).isdisjoint(inversion_set(y))


# -- the largest inversion set inside a set ------------------------------------
#
# A point p of the plane is recorded by (x, y) = ((alpha, p), (beta, p)), so a
# root d = a*alpha + b*beta pairs with p as a*x + b*y. The alcove of p has
# inversion set {d + n*delta positive : (d, p) + n < 0}. Phi_w lies in D iff
# the alcove of w lies in the open polygon
#     P(D) = {p : (d, p) > -run_D(d) - [d negative]  for every d with finite run},
# run_D(d) being the number of consecutive levels of D from the bottom of d.
# The union of the inversion sets of the alcoves in P(D) is the set of
# hyperplanes meeting P(D); direction d contributes the levels n < -inf_P (d, p).

def _polygon(d_set: EPSet):
    rs = R.get(d_set.tag)
    cons = {}
    for d in rs.roots:
        run = d_set.run_from_base(d)
        if run != INFINITE:
            cons[d] = -run - (0 if R.is_positive(d) else 1)
    return cons


@lru_cache(maxsize=None)
def _dual_rows(tag: str, f: R.Root):
    """Ways to write f as a nonnegative combination of one or two roots.

    Each row (d1, d2, n1, n2, den) means f = (n1*d1 + n2*d2)/den, with d2 None
    for a single positive multiple.
    """
    rs = R.get(tag)
    rows = []
    for a in rs.roots:
        if a[0] * f[1] - a[1] * f[0] == 0 and a[0] * f[0] + a[1] * f[1] > 0:
            t = Fraction(f[0], a[0]) if a[0] else Fraction(f[1], a[1])
            rows.append((a, None, t.numerator, 0, t.denominator))
    for a, b in combinations(rs.roots, 2):
        det = a[0] * b[1] - a[1] * b[0]
        if det == 0:
            continue
        n1 = f[0] * b[1] - f[1] * b[0]
        n2 = a[0] * f[1] - a[1] * f[0]
        if det < 0:
            det, n1, n2 = -det, -n1, -n2
        if n1 >= 0 and n2 >= 0:
            rows.append((a, b, n1, n2, det))
    return tuple(rows)


def _infimum(tag: str, f, cons) -> Optional[Fraction]:
    """inf of f.p over {p : d.p >= c_d}; by LP duality the best dual row is optimal."""
    best = None
    for d1, d2, n1, n2, den in _dual_rows(tag, f):
        if d1 not in cons or (d2 is not None and d2 not in cons):
            continue
        val = Fraction(n1 * cons[d1] + (n2 * cons[d2] if d2 is not None else 0), den)
        if best is None or val > best:
            best = val
    return best


def hyperplane_hull(d_set: EPSet) -> EPSet:
    """Union of Phi_w over all finite w with Phi_w inside d_set."""
    rs = R.get(d_set.tag)
    cons = _polygon(d_set)
    out = {}
    for d in rs.roots:
        inf = _infimum(d_set.tag, d, cons)
        lo = base_level(d)
        if inf is None:
            out[d] = [(lo, None)]
            continue
        top = -inf
        hi = (top.numerator + top.denominator - 1) // top.denominator - 1  # ceil(top) - 1
        if hi >= lo:
            out[d] = [(lo, hi)]
    return EPSet(d_set.tag, out)


@lru_cache(maxsize=None)
def maximal_elements(tag: str) -> Tuple[WBar, ...]:
    """One infinite word per positive system Psi^+, with inversion set hat(Psi^+)."""
    out = []
    for pos in R.get(tag).positive_systems():
        out.append(as_wbar(EPSet.hat(tag, pos)))
    return tuple(sorted(out, key=lambda x: (len(x.w), x.w)))


def max_word_below(d_set: EPSet) -> WBar:
    """The join of all w with Phi_w inside d_set.

    If that family is unbounded, the answer is taken inside the first maximal
    element, in shortlex order of maximal words.
    """
    hull = hyperplane_hull(d_set)
    if not d_set.includes(hull):
        raise AssertionError("hyperplane hull escaped its bounding set")
    try:
        return as_wbar(hull)
    except RecognitionError:
        pass
    top = maximal_elements(d_set.tag)[0]
    return as_wbar(hyperplane_hull(d_set.intersection(inversion_set(top))))


def meet(x: WBar, y: WBar) -> WBar:
    return max_word_below(inversion_set(x).intersection(inversion_set(y)))


def join_bounded(xs: Iterable[WBar]) -> WBar:
    """Least upper bound; raises Unbounded when no common bound exists."""
    xs = list(xs)
    if not xs:
        raise ValueError("empty family")
    tag = xs[0].tag
    union = EPSet.empty(tag)
    for x in xs:
        union = union.union(inversion_set(x))
    hull = closure(tag, union)
    dirs = hull.inhabited_directions()
    if any(R.neg(d) in dirs for d in dirs):
        raise Unbounded("closure of the union contains an opposite pair of directions")
    return as_wbar(hull)


def all_reduced_words(tag: str, max_len: int) -> List[Word]:
    """Every reduced word of length <= max_len (lexicographic within length)."""
    out: List[Word] = [()]
    layer: List[Word] = [()]
    simple = simple_roots(tag)
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for s in range(3):
                r = apply_word(tag, w, simple[s])
                if r.level >= base_level(r.dir):
                    nxt.append(w + (s,))
        out.extend(nxt)
        layer = nxt
    return out


def elements_up_to(tag: str, max_len: int) -> List[WBar]:
    """All finite elements of length <= max_len, one shortlex word each."""
    seen = {}
    for w in all_reduced_words(tag, max_len):
        inv = inversion_set_finite(tag, w)
        if inv not in seen:
            seen[inv] = w
    return [WBar(tag, w, FULL, ()) for w in sorted(seen.values(), key=lambda w: (len(w), w))]
