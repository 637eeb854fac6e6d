"""Biclosed subsets of the positive affine roots as an ortholattice.

Every biclosed set is Phi_x or its complement Phi_x' for some x in W-bar.
A ``BElement`` keeps the set itself and tags it with which of the two it is.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .affine import EPSet, closure, is_biclosed_window, safe_window
from .biclosed import RecognitionError, canonical, recognize
from . import words

INV, COINV = "inv", "coinv"


class BElement:
    """A biclosed set B, either Phi_x (kind "inv") or Phi_x' (kind "coinv")."""

    __slots__ = ("epset", "kind", "_word")

    def __init__(self, epset: EPSet, kind: Optional[str] = None):
        if kind is None:
            kind = _kind_of(epset)
        if kind not in (INV, COINV):
            raise ValueError(f"unknown kind {kind!r}")
        self.epset = epset
        self.kind = kind
        self._word = None

    @property
    def tag(self) -> str:
        return self.epset.tag

    @property
    def word(self) -> words.WBar:
        """The x with B = Phi_x (inv) or B = Phi_x' (coinv)."""
        if self._word is None:
            target = self.epset if self.kind == INV else self.epset.complement()
            self._word = words.as_wbar(target)
        return self._word

    @classmethod
    def inv(cls, x: words.WBar) -> "BElement":
        out = cls(words.inversion_set(x), INV)
        out._word = x
        return out

    @classmethod
    def coinv(cls, x: words.WBar) -> "BElement":
        comp = words.inversion_set(x).complement()
        if _is_inversion_set(comp):
            return cls(comp, INV)
        out = cls(comp, COINV)
        out._word = x
        return out

    @classmethod
    def bottom(cls, tag: str) -> "BElement":
        return cls.inv(words.identity(tag))

    @classmethod
    def top(cls, tag: str) -> "BElement":
        return cls(EPSet.full(tag), COINV)

    def __eq__(self, other):
        return isinstance(other, BElement) and self.epset == other.epset

    def __hash__(self):
        return hash(self.epset)

    def __le__(self, other: "BElement") -> bool:
        return other.epset.includes(self.epset)

    def __repr__(self):
        return f"BElement({self.kind}, {self.word})"

    def to_json(self):
        return {"kind": self.kind, "word": words.to_json(self.word)}

    @classmethod
    def from_json(cls, tag: str, obj) -> "BElement":
        x = words.from_json(tag, obj["word"])
        if obj["kind"] == INV:
            return cls.inv(x)
        if obj["kind"] == COINV:
            return cls.coinv(x)
        raise ValueError(f"unknown kind {obj['kind']!r}")


def _is_inversion_set(e: EPSet) -> bool:
    try:
        return not recognize(e).K
    except RecognitionError:
        return False


def _kind_of(e: EPSet) -> str:
    if _is_inversion_set(e):
        return INV
    if _is_inversion_set(e.complement()):
        return COINV
    raise RecognitionError("set is neither an inversion set nor the complement of one")


def complement(b: BElement) -> BElement:
    if b.kind == COINV:
        return BElement.inv(b.word)
    return BElement.coinv(b.word)


def _bounded_hull(union: EPSet) -> Optional[EPSet]:
    """closure(union) when it lies in some hat(Psi^+), else None."""
    hull = closure(union.tag, union)
    dirs = hull.inhabited_directions()
    if any((-d[0], -d[1]) in dirs for d in dirs):
        return None
    return hull


def join(b1: BElement, b2: BElement) -> BElement:
    """Least biclosed set containing both.

    When the closure of the union sits inside some hat(Psi^+) it is the join
    and an inversion set. Otherwise the join is the complement of the largest
    inversion set disjoint from both.
    """
    hull = _bounded_hull(b1.epset.union(b2.epset))
    if hull is not None:
        out = BElement(hull, INV)
        out.word  # recognition doubles as the biclosedness check
    else:
        below = words.max_word_below(b1.epset.complement().intersection(b2.epset.complement()))
        out = BElement.coinv(below)
    if not (out.epset.includes(b1.epset) and out.epset.includes(b2.epset)):
        raise AssertionError("join lost an operand")
    return out


def meet(b1: BElement, b2: BElement) -> BElement:
    out = complement(join(complement(b1), complement(b2)))
    if not (b1.epset.includes(out.epset) and b2.epset.includes(out.epset)):
        raise AssertionError("meet escaped an operand")
    return out


def join_all(bs: Iterable[BElement]) -> BElement:
    bs = list(bs)
    out = bs[0]
    for b in bs[1:]:
        out = join(out, b)
    return out


def _check_chain(chain: Sequence[BElement]):
    if not chain:
        raise ValueError("empty chain")
    for a, b in combinations(chain, 2):
        if not (a <= b or b <= a):
            raise ValueError("chain elements are not pairwise comparable")


def chain_union(chain: Sequence[BElement]) -> BElement:
    _check_chain(chain)
    out = chain[0].epset
    for b in chain[1:]:
        out = out.union(b.epset)
    return BElement(out)


def chain_intersection(chain: Sequence[BElement]) -> BElement:
    _check_chain(chain)
    out = chain[0].epset
    for b in chain[1:]:
        out = out.intersection(b.epset)
    return BElement(out)


def finite_closure_join(xs: Iterable[words.WBar]) -> Optional[BElement]:
    """Join of finitely many finite words when the closure of their union is finite."""
    xs = list(xs)
    if not xs:
        raise ValueError("empty family")
    union = EPSet.empty(xs[0].tag)
    for x in xs:
        if not words.is_finite(x):
            raise ValueError("finite_closure_join takes finite words")
        union = union.union(words.inversion_set(x))
    hull = closure(union.tag, union)
    if not hull.is_finite():
        return None
    if not is_biclosed_window(hull, safe_window(hull)):
        raise AssertionError("finite closure of inversion sets is not biclosed")
    return BElement(hull, INV)


# -- the quasi-positive system of type A2 --------------------------------------
#
# Psi = {-alpha + l delta, -beta + m delta, -alpha-beta + n delta : l, m, n in Z}
# is handled on the window |level| <= N. Roots are vectors (a, b, level).

_NA, _NB, _NAB = (-1, 0), (0, -1), (-1, -1)


def _quasi_universe(n: int) -> FrozenSet[Tuple[int, int, int]]:
    return frozenset(d + (k,) for d in (_NA, _NB, _NAB) for k in range(-n, n + 1))


def _in_cone(u, v, t) -> bool:
    # t = k1 u + k2 v with k1, k2 >= 0, solved on the first two coordinates
    det = u[0] * v[1] - u[1] * v[0]
    if det == 0:
        return False
    k1 = Fraction(t[0] * v[1] - t[1] * v[0], det)
    k2 = Fraction(u[0] * t[1] - u[1] * t[0], det)
    return k1 >= 0 and k2 >= 0 and k1 * u[2] + k2 * v[2] == t[2]


def _quasi_closure(gens, universe) -> FrozenSet:
    cur = set(gens)
    changed = True
    while changed:
        changed = False
        for t in universe - cur:
            if any(_in_cone(u, v, t) for u, v in combinations(cur, 2)):
                cur.add(t)
                changed = True
    return frozenset(cur)


def _is_quasi_closed(s, universe) -> bool:
    return _quasi_closure(s, universe) == frozenset(s)


def quasi_positive_counterexample(window: int = 6) -> Dict[str, object]:
    """Check on a level window that B1 and B2 have no meet among biclosed sets of Psi."""
    n = window
    universe = _quasi_universe(n)

    def pick(pred):
        return frozenset(r for r in universe if pred(r[:2], r[2]))

    b1 = pick(lambda d, k: d != _NB or k <= 0)
    b2 = pick(lambda d, k: d != _NA or k >= 0)
    b3 = pick(lambda d, k: d == _NA and k >= 0)
    b4 = pick(lambda d, k: d == _NB and k <= 0)
    expected = pick(lambda d, k: (d == _NA and k >= 0) or (d == _NB and k <= 0) or d == _NAB)
    inputs_biclosed = all(_is_quasi_closed(b, universe) and _is_quasi_closed(universe - b, universe)
                          for b in (b1, b2, b3, b4))
    hull = _quasi_closure(b3 | b4, universe)
    contained = (b3 | b4) <= (b1 & b2)
    hull_is_expected = hull == expected and hull == (b1 & b2)
    not_coclosed = not _is_quasi_closed(universe - hull, universe)
    return {
        "window": n,
        "inputs_biclosed": inputs_biclosed,
        "verdicts": [contained, hull_is_expected, not_coclosed],
    }


# -- sampling ---------------------------------------------------------------------

def sample_elements(tag: str, max_len: int = 6) -> List[BElement]:
    """Inv and coinv elements for every finite word of length <= max_len and every
    infinite word w . Phi^+_{L,empty} with |w| <= max_len, deduplicated."""
    seen: Dict[EPSet, BElement] = {}
    ws = words.elements_up_to(tag, max_len)
    for x in ws:
        for b in (BElement.inv(x), BElement.coinv(x)):
            seen.setdefault(b.epset, b)
        for L in ((), (0,), (1,)):
            y = canonical(tag, x.w, L, ())
            for b in (BElement.inv(y), BElement.coinv(y)):
                seen.setdefault(b.epset, b)
    return sorted(seen.values(), key=lambda b: (b.kind, len(b.word.w), b.word.w, b.word.L))
