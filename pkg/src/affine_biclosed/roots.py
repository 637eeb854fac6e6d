"""Rank-2 crystallographic root systems A2, B2, G2.

Roots are integer pairs (a, b) meaning a*alpha + b*beta, with alpha the short
simple root and beta the long one. Inner products use the Gram matrix scaled
so that short roots have squared length 2.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Root = Tuple[int, int]

TYPES = ("A2", "B2", "G2")

_GRAM = {
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -2), (-2, 4)),
    "G2": ((2, -3), (-3, 6)),
}

SIMPLE: Tuple[Root, Root] = ((1, 0), (0, 1))


def add(u: Root, v: Root) -> Root:
    return (u[0] + v[0], u[1] + v[1])


def neg(u: Root) -> Root:
    return (-u[0], -u[1])


def scale(c: int, u: Root) -> Root:
    return (c * u[0], c * u[1])


def is_positive(r: Root) -> bool:
    """Positivity w.r.t. the standard positive system (coefficients >= 0)."""
    return r[0] >= 0 and r[1] >= 0 and r != (0, 0)


class RootSystem:
    """Root data for one of the types A2, B2, G2."""

    def __init__(self, tag: str):
        if tag not in _GRAM:
            raise ValueError(f"unknown root system type {tag!r}; expected one of {TYPES}")
        self.tag = tag
        self.gram = _GRAM[tag]
        self.simple = SIMPLE
        self.cartan = tuple(
            tuple(self.pair(SIMPLE[j], SIMPLE[i]) for j in range(2)) for i in range(2)
        )
        self.roots = self._generate()
        self.root_set = frozenset(self.roots)
        self.positive = tuple(r for r in self.roots if is_positive(r))
        self.negative = tuple(neg(r) for r in self.positive)
        self.highest = max(self.positive, key=lambda r: (r[0] + r[1], r))
        self.index = {r: i for i, r in enumerate(self.roots)}

    def inner(self, u: Root, v: Root) -> int:
        g = self.gram
        return (u[0] * (g[0][0] * v[0] + g[0][1] * v[1])
                + u[1] * (g[1][0] * v[0] + g[1][1] * v[1]))

    def norm(self, u: Root) -> int:
        return self.inner(u, u)

    def pair(self, t: Root, m: Root) -> int:
        """The integer <t, m^vee> = 2(t, m)/(m, m)."""
        num = 2 * self.inner(t, m)
        den = self.norm(m)
        if num % den:
            raise ValueError(f"non-integral pairing of {t} with {m}")
        return num // den

    def reflect(self, mirror: Root, target: Root) -> Root:
        c = self.pair(target, mirror)
        return (target[0] - c * mirror[0], target[1] - c * mirror[1])

    def _generate(self) -> Tuple[Root, ...]:
        seen = {SIMPLE[0], SIMPLE[1], neg(SIMPLE[0]), neg(SIMPLE[1])}
        frontier = list(seen)
        while frontier:
            nxt = []
            for r in frontier:
                for s in SIMPLE:
                    t = self.reflect(s, r)
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        pos = sorted((r for r in seen if is_positive(r)), key=lambda r: (r[0] + r[1], r))
        return tuple(pos) + tuple(neg(r) for r in pos)

    # -- Weyl group -------------------------------------------------------

    @property
    def weyl_group(self) -> Tuple["WeylElement", ...]:
        return _weyl_group(self.tag)

    def positive_systems(self) -> List[FrozenSet[Root]]:
        """The |W| positive systems z(Phi+), in the order of ``weyl_group``."""
        return [frozenset(z.apply(r) for r in self.positive) for z in self.weyl_group]

    def span_roots(self, gens: Iterable[Root]) -> FrozenSet[Root]:
        """Roots lying in the linear span of ``gens`` (the subsystem Phi_L)."""
        gens = list(gens)
        if not gens:
            return frozenset()
        if _rank(gens) == 2:
            return self.root_set
        g = gens[0]
        return frozenset(r for r in self.roots if r[0] * g[1] - r[1] * g[0] == 0)

    def orthogonal(self, xs: Iterable[Root], ys: Iterable[Root]) -> bool:
        ys = list(ys)
        return all(self.inner(x, y) == 0 for x in xs for y in ys)

    # -- h_L and d_L ------------------------------------------------------

    def h(self, root: Root, L: Iterable[int]) -> int:
        """Sum of the simple-root coefficients outside L (L given as simple indices)."""
        if not is_positive(root) or root not in self.root_set:
            raise ValueError(f"h_L needs a positive root, got {root}")
        L = set(L)
        return sum(root[i] for i in range(2) if i not in L)

    def d(self, root: Root, L: Iterable[int]) -> int:
        """Largest n such that ``root`` is a sum of n roots of Phi+ minus Phi_L."""
        if not is_positive(root) or root not in self.root_set:
            raise ValueError(f"d_L needs a positive root, got {root}")
        L = sorted(set(L))
        phi_l = self.span_roots(SIMPLE[i] for i in L)
        parts = [r for r in self.positive if r not in phi_l]
        if root in phi_l:
            return 0
        return _max_parts(root, tuple(parts))

    def phi_plus_minus(self, L: Iterable[int]) -> Tuple[Root, ...]:
        """Phi+_{L, empty}: positive roots outside Phi_L."""
        phi_l = self.span_roots(SIMPLE[i] for i in L)
        return tuple(r for r in self.positive if r not in phi_l)


def _rank(vs: Sequence[Root]) -> int:
    if not any(v != (0, 0) for v in vs):
        return 0
    for u, v in combinations(vs, 2):
        if u[0] * v[1] - u[1] * v[0] != 0:
            return 2
    return 1


@lru_cache(maxsize=None)
def _max_parts(target: Root, parts: Tuple[Root, ...]) -> int:
    # exhaustive multiset decomposition; parts are positive so recursion is finite
    best = -1
    for p in parts:
        if p == target:
            best = max(best, 1)
        rest = (target[0] - p[0], target[1] - p[1])
        if rest[0] >= 0 and rest[1] >= 0 and rest != (0, 0):
            sub = _max_parts(rest, parts)
            if sub > 0:
                best = max(best, sub + 1)
    return best


class WeylElement:
    """Finite Weyl group element stored by the images of the simple roots."""

    __slots__ = ("images", "word")

    def __init__(self, images: Tuple[Root, Root], word: Tuple[int, ...]):
        self.images = images
        self.word = word

    def apply(self, r: Root) -> Root:
        (a0, b0), (a1, b1) = self.images
        return (r[0] * a0 + r[1] * a1, r[0] * b0 + r[1] * b1)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"WeylElement(word={self.word})"


@lru_cache(maxsize=None)
def _weyl_group(tag: str) -> Tuple[WeylElement, ...]:
    rs = get(tag)
    e = WeylElement(SIMPLE, ())
    seen = {e.images: e}
    frontier = [e]
    while frontier:
        nxt = []
        for z in frontier:
            for i in range(2):
                # z * s_i: images of simple roots under z s_i
                imgs = tuple(z.apply(rs.reflect(SIMPLE[i], SIMPLE[j])) for j in range(2))
                if imgs not in seen:
                    el = WeylElement(imgs, z.word + (i,))
                    seen[imgs] = el
                    nxt.append(el)
        frontier = nxt
    return tuple(seen.values())


@lru_cache(maxsize=None)
def get(tag: str) -> RootSystem:
    return RootSystem(tag)


# -- biclosed subsets of Phi ---------------------------------------------

def phi_biclosed_set(rs: RootSystem, positive: Iterable[Root], removed: Iterable[Root],
                     added: Iterable[Root]) -> FrozenSet[Root]:
    """The set (Psi+ minus Phi_removed) union Phi_added for a positive system Psi+."""
    positive = frozenset(positive)
    removed, added = list(removed), list(added)
    if not rs.orthogonal(removed, added):
        raise ValueError(f"removed {removed} and added {added} are not orthogonal")
    return frozenset(r for r in positive if r not in rs.span_roots(removed)) | rs.span_roots(added)


def cone_coefficients(u: Root, v: Root, t: Root) -> Optional[Tuple[Fraction, Fraction]]:
    """Solve t = k1*u + k2*v for independent u, v; None if dependent."""
    det = u[0] * v[1] - u[1] * v[0]
    if det == 0:
        return None
    k1 = Fraction(t[0] * v[1] - t[1] * v[0], det)
    k2 = Fraction(u[0] * t[1] - u[1] * t[0], det)
    return k1, k2


def is_closed_in_phi(rs: RootSystem, subset: Iterable[Root]) -> bool:
    s = set(subset)
    for u, v in product(s, repeat=2):
        for t in rs.roots:
            if t in s:
                continue
            k = cone_coefficients(u, v, t)
            if k is None:
                # collinear roots only produce positive multiples of themselves
                continue
            if k[0] >= 0 and k[1] >= 0:
                return False
    return True


def is_biclosed_in_phi(rs: RootSystem, subset: Iterable[Root]) -> bool:
    s = frozenset(subset)
    return is_closed_in_phi(rs, s) and is_closed_in_phi(rs, rs.root_set - s)


def biclosed_subsets_of_phi(rs: RootSystem) -> List[FrozenSet[Root]]:
    """All biclosed subsets of Phi by exhaustive enumeration (at most 2^12)."""
    out = []
    roots = rs.roots
    for mask in range(1 << len(roots)):
        s = frozenset(r for i, r in enumerate(roots) if mask >> i & 1)
        if is_biclosed_in_phi(rs, s):
            out.append(s)
    return out


def standard_biclosed_forms(rs: RootSystem) -> Dict[FrozenSet[Root], Tuple]:
    """Every Psi+_{D', D''} keyed by its set, with one (z, D', D'') producing it."""
    out: Dict[FrozenSet[Root], Tuple] = {}
    for z in rs.weyl_group:
        pos = frozenset(z.apply(r) for r in rs.positive)
        simple = [z.apply(s) for s in SIMPLE]
        subsets = [(), (0,), (1,), (0, 1)]
        for rem in subsets:
            for ad in subsets:
                R = [simple[i] for i in rem]
                A = [simple[i] for i in ad]
                if not rs.orthogonal(R, A):
                    continue
                s = phi_biclosed_set(rs, pos, R, A)
                out.setdefault(s, (z.word, rem, ad))
    return out
