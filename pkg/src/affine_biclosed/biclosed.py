"""Biclosed sets in the positive affine roots as w . Phi^+_{L,K}.

L and K are subsets of the standard simple system, given as simple-root
indices (0 for alpha, 1 for beta). Words use generator indices 0, 1, 2 for
s_alpha, s_beta, s_{delta - highest root}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import roots as R
from .affine import (AffineRoot, EPSet, Word, apply_word, base_level, closure, finite_part,
                     root_sequence, simple_roots)
from .roots import Root

Subset = Tuple[int, ...]
DEFAULT_RADIUS = 64


class NotFinitelyGenerated(ValueError):
    pass


class RecognitionError(ValueError):
    """The set is not biclosed, or lies beyond the search radius."""


def orthogonal_pairs(tag: str) -> List[Tuple[Subset, Subset]]:
    """All (L, K) with L, K subsets of the simple indices and L orthogonal to K."""
    rs = R.get(tag)
    subsets = [(), (0,), (1,), (0, 1)]
    return [(L, K) for L in subsets for K in subsets
            if rs.orthogonal([R.SIMPLE[i] for i in L], [R.SIMPLE[i] for i in K])]


def _check_pair(tag: str, L: Sequence[int], K: Sequence[int]) -> Tuple[Subset, Subset]:
    L, K = tuple(sorted(set(L))), tuple(sorted(set(K)))
    for i in L + K:
        if i not in (0, 1):
            raise ValueError(f"simple index {i} out of range")
    if (L, K) not in orthogonal_pairs(tag):
        raise ValueError(f"L={list(L)} and K={list(K)} are not orthogonal")
    return L, K


def base_directions(tag: str, L: Sequence[int], K: Sequence[int]) -> FrozenSet[Root]:
    """Phi^+_{L,K} = (Phi^+ minus Phi_L) union Phi_K."""
    rs = R.get(tag)
    return R.phi_biclosed_set(rs, rs.positive, [R.SIMPLE[i] for i in L], [R.SIMPLE[i] for i in K])


def base_set(tag: str, L: Sequence[int], K: Sequence[int]) -> EPSet:
    return EPSet.hat(tag, base_directions(tag, L, K))


# -- the action ---------------------------------------------------------------

def act_simple(s: int, gamma: EPSet) -> EPSet:
    """s . Gamma = s(Gamma minus {alpha_s}), plus alpha_s when it was absent."""
    tag = gamma.tag
    rs = R.get(tag)
    a = simple_roots(tag)[s]
    had = a in gamma
    image: Dict[Root, List] = {}
    for d, ivs in gamma.items():
        c = rs.pair(d, a.dir)
        nd = (d[0] - c * a.dir[0], d[1] - c * a.dir[1])
        shift = -c * a.level
        moved = []
        for lo, hi in ivs:
            if d == a.dir and lo == a.level:
                lo += 1
                if hi is not None and hi < lo:
                    continue
            moved.append((lo + shift, None if hi is None else hi + shift))
        image[nd] = moved
    if not had:
        image.setdefault(a.dir, []).append((a.level, a.level))
    return EPSet(tag, image)


def act(word: Sequence[int], gamma: EPSet) -> EPSet:
    """x . Gamma for a word x; letters act right to left."""
    for s in reversed(tuple(word)):
        gamma = act_simple(s, gamma)
    return gamma


def act_formula(word: Sequence[int], gamma: EPSet) -> EPSet:
    """(Phi_x minus x(-Gamma)) union (x(Gamma) minus (-Phi_x)), evaluated literally.

    Used as an independent check of ``act``; needs x reduced.
    """
    tag = gamma.tag
    inv = inversion_set_finite(tag, word)
    # x(Gamma) is computed direction by direction: x maps d to pi(x)(d) with a level shift
    image: Dict[Root, List] = {}
    for d, ivs in gamma.items():
        r0 = apply_word(tag, word, AffineRoot(d, 0))
        shift = r0.level
        image.setdefault(r0.dir, []).extend(
            (lo + shift, None if hi is None else hi + shift) for lo, hi in ivs)
    # x(Gamma) may contain negative roots; keep the positive part only
    pos_image = EPSet(tag, {d: _clip(ivs, base_level(d)) for d, ivs in image.items()})
    neg_image = _negative_part(tag, image)  # -(negative part of x(Gamma)) as positive roots
    # r in x(-Gamma) iff -r in x(Gamma)
    part1 = inv.difference(neg_image)
    # -Phi_x consists of negative roots, so it never meets the positive part
    return part1.union(pos_image)


def _clip(ivs, lo_min):
    out = []
    for lo, hi in ivs:
        if hi is not None and hi < lo_min:
            continue
        out.append((max(lo, lo_min), hi))
    return out


def _negative_part(tag: str, image: Dict[Root, List]) -> EPSet:
    """The roots -r for negative r = (d, n) in the image, as positive roots (-d, -n)."""
    out: Dict[Root, List] = {}
    for d, ivs in image.items():
        nd = R.neg(d)
        top = base_level(d) - 1  # negative roots in direction d have level <= top
        for lo, hi in ivs:
            if lo > top:
                continue
            h = top if hi is None else min(hi, top)
            out.setdefault(nd, []).append((-h, -lo))
    return EPSet(tag, out)


def inversion_set_finite(tag: str, word: Sequence[int]) -> EPSet:
    """Phi_w for a reduced word, by root accumulation."""
    seq = root_sequence(tag, word)
    if len(set(seq)) != len(seq) or not all(r.level >= base_level(r.dir) for r in seq):
        raise ValueError(f"word {list(word)} is not reduced")
    return EPSet.from_roots(tag, seq)


# -- canonical forms -------------------------------------------------------------

@dataclass(frozen=True)
class BiclosedCanonical:
    """w . Phi^+_{L,K} with w the shortlex-minimal word for the set."""

    tag: str
    w: Word
    L: Subset
    K: Subset

    def __post_init__(self):
        _check_pair(self.tag, self.L, self.K)

    @property
    def epset(self) -> EPSet:
        return to_epset(self)

    def member(self, r: AffineRoot) -> bool:
        return r in self.epset

    def to_json(self):
        return {"w": list(self.w), "L": list(self.L), "K": list(self.K)}

    @staticmethod
    def from_json(tag: str, obj) -> "BiclosedCanonical":
        try:
            return canonical(tag, tuple(obj["w"]), tuple(obj.get("L", ())), tuple(obj.get("K", ())))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed biclosed form {obj!r}") from exc


@lru_cache(maxsize=4096)
def _to_epset(tag: str, w: Word, L: Subset, K: Subset) -> EPSet:
    return act(w, base_set(tag, L, K))


def to_epset(bc: BiclosedCanonical) -> EPSet:
    return _to_epset(bc.tag, bc.w, bc.L, bc.K)


def canonical(tag: str, w: Sequence[int], L: Sequence[int], K: Sequence[int]) -> BiclosedCanonical:
    """Normal form of w . Phi^+_{L,K} (any word w, reduced or not)."""
    L, K = _check_pair(tag, L, K)
    for s in w:
        if s not in (0, 1, 2):
            raise ValueError(f"generator index {s} out of range")
    target = act(tuple(w), base_set(tag, L, K))
    return BiclosedCanonical(tag, _orbit(tag, L, K).word_for(target, DEFAULT_RADIUS, strict=True), L, K)


class _Orbit:
    """Breadth-first orbit of Phi^+_{L,K} under left action, with shortlex words."""

    def __init__(self, tag: str, L: Subset, K: Subset):
        base = base_set(tag, L, K)
        self.words: Dict[EPSet, Word] = {base: ()}
        self.frontier: List[EPSet] = [base]
        self.radius = 0

    def grow(self):
        found: Dict[EPSet, Word] = {}
        for x in self.frontier:
            wx = self.words[x]
            for s in range(3):
                y = act_simple(s, x)
                if y in self.words:
                    continue
                cand = (s,) + wx
                if y not in found or cand < found[y]:
                    found[y] = cand
        self.words.update(found)
        self.frontier = sorted(found, key=found.get)
        self.radius += 1

    def word_for(self, target: EPSet, max_radius: int, strict: bool = False) -> Optional[Word]:
        while target not in self.words:
            if self.radius >= max_radius or not self.frontier:
                if strict:
                    raise RecognitionError(f"set not reached within radius {max_radius}")
                return None
            self.grow()
        return self.words[target]


@lru_cache(maxsize=None)
def _orbit(tag: str, L: Subset, K: Subset) -> _Orbit:
    return _Orbit(tag, L, K)


@lru_cache(maxsize=None)
def _types_by_rays(tag: str) -> Dict[FrozenSet[Root], Tuple[Tuple[Subset, Subset], ...]]:
    rs = R.get(tag)
    out: Dict[FrozenSet[Root], set] = {}
    for L, K in orthogonal_pairs(tag):
        dirs = base_directions(tag, L, K)
        for z in rs.weyl_group:
            out.setdefault(frozenset(z.apply(d) for d in dirs), set()).add((L, K))
    return {k: tuple(sorted(v)) for k, v in out.items()}


def candidate_types(gamma: EPSet) -> Tuple[Tuple[Subset, Subset], ...]:
    """(L, K) pairs whose W-orbit of Phi^+_{L,K} has the ray directions of gamma."""
    return _types_by_rays(gamma.tag).get(gamma.ray_directions(), ())


def finite_word_of(gamma: EPSet) -> Word:
    """Shortlex reduced word w with Phi_w = gamma, by stripping least left descents."""
    tag = gamma.tag
    simple = simple_roots(tag)
    word: List[int] = []
    cur = gamma
    budget = gamma.cardinality()
    while not cur.is_empty():
        if len(word) > budget:
            raise RecognitionError("not an inversion set")
        for s in range(3):
            if simple[s] in cur:
                word.append(s)
                cur = act_simple(s, cur)
                break
        else:
            raise RecognitionError("finite set without a left descent is not an inversion set")
    if act(word, EPSet.empty(tag)) != gamma:
        raise RecognitionError("finite set is not an inversion set")
    return tuple(word)


def recognize(gamma: EPSet, max_radius: int = DEFAULT_RADIUS) -> BiclosedCanonical:
    """Canonical form of a biclosed set; RecognitionError if none is found."""
    tag = gamma.tag
    if gamma.is_finite():
        return BiclosedCanonical(tag, finite_word_of(gamma), (0, 1), ())
    comp = gamma.complement()
    if comp.is_finite():
        return BiclosedCanonical(tag, finite_word_of(comp), (), (0, 1))
    cands = [c for c in candidate_types(gamma) if c not in (((0, 1), ()), ((), (0, 1)))]
    if not cands:
        raise RecognitionError("ray directions match no Psi^+_{L,K}; set is not biclosed")
    orbits = [(_orbit(tag, L, K), L, K) for L, K in cands]
    for radius in range(max_radius + 1):
        for orb, L, K in orbits:
            w = orb.word_for(gamma, radius)
            if w is not None:
                return BiclosedCanonical(tag, w, L, K)
    raise RecognitionError(f"no canonical form within radius {max_radius}")


def is_inversion_type(bc: BiclosedCanonical) -> bool:
    """True when the set is Phi_x for some finite or infinite reduced word x."""
    return not bc.K


# -- I and A ---------------------------------------------------------------------

def I_of(b: EPSet) -> FrozenSet[Root]:
    return b.ray_directions()


def A_of(b: EPSet) -> FrozenSet[Root]:
    return b.inhabited_directions()


# -- finite generation -----------------------------------------------------------

def _orth_complement(tag: str, K: Sequence[int]) -> Subset:
    rs = R.get(tag)
    return tuple(i for i in (0, 1)
                 if all(rs.inner(R.SIMPLE[i], R.SIMPLE[k]) == 0 for k in K))


def is_finitely_generated(bc: BiclosedCanonical) -> bool:
    """The finite-generation criterion on the ray invariant Psi^+_{L,M}.

    Psi^+ = pi(w)Phi^+, so the condition is checked on the standard (L, K).
    """
    if not bc.K:
        return bc.L == (0, 1)
    return bc.L == _orth_complement(bc.tag, bc.K)


def generators(bc: BiclosedCanonical) -> FrozenSet[AffineRoot]:
    """Finite generating set: the head of every ray plus every finite string."""
    if not is_finitely_generated(bc):
        raise NotFinitelyGenerated(f"{bc} is not finitely generated")
    gamma = to_epset(bc)
    gens = []
    for d, ivs in gamma.items():
        (lo, hi), = ivs
        if hi is None:
            gens.append(AffineRoot(d, lo))
        else:
            gens.extend(AffineRoot(d, n) for n in range(lo, hi + 1))
    gens = frozenset(gens)
    if closure(bc.tag, gens) != gamma:
        raise AssertionError(f"generators of {bc} do not regenerate it")
    return gens


def missing_root(bc: BiclosedCanonical, truncation: int) -> Tuple[AffineRoot, EPSet]:
    """For a non-finitely-generated set: a root of Gamma outside closure(Gamma_{<=t}).

    a = pi(w)(alpha_i) for alpha_i simple outside L and orthogonal to M is a ray
    of Gamma but not of the closure of the truncation; the returned root is
    a + (t'+1)delta with t' the top level of a in that closure. For w = e, t'
    is the top level of alpha_i in the truncation itself; for a translate the
    finite part of Gamma can lift t' by a bounded amount.
    """
    if is_finitely_generated(bc):
        raise ValueError("set is finitely generated")
    tag = bc.tag
    rs = R.get(tag)
    gamma = to_epset(bc)
    gen = closure(tag, gamma.truncate(truncation))
    M = [finite_part(tag, bc.w, R.SIMPLE[k]) for k in bc.K]
    for i in (0, 1):
        if i in bc.L:
            continue
        a = finite_part(tag, bc.w, R.SIMPLE[i])
        if any(rs.inner(a, m) != 0 for m in M) or a in gen.ray_directions():
            continue
        ivs = gen.levels(a)
        top = ivs[-1][1] if ivs else base_level(a) - 1
        cand = AffineRoot(a, top + 1)
        if cand in gamma and cand not in gen:
            return cand, gen
    raise AssertionError(f"no obstruction root found for {bc} at truncation {truncation}")
