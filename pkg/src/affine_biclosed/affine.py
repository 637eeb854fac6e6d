"""Affine roots, eventually periodic sets and closure.

An affine root alpha + n*delta is stored as ``AffineRoot(dir, level)``. It is
positive iff dir is positive and n >= 0, or dir is negative and n >= 1.

An ``EPSet`` stores, per direction, a sorted tuple of disjoint level
intervals ``(lo, hi)`` with ``hi=None`` meaning a ray. Closed sets always have
at most one interval per direction; more than one marks a raw, non-canonical
set that may come out of set algebra.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

from . import roots as R
from .roots import Root

Interval = Tuple[int, Optional[int]]
INFINITE = math.inf


class AffineRoot(NamedTuple):
    dir: Root
    level: int

    def __str__(self):
        return f"{list(self.dir)}+{self.level}d"

    def to_json(self):
        return {"dir": list(self.dir), "level": self.level}

    @staticmethod
    def from_json(obj) -> "AffineRoot":
        try:
            a, b = obj["dir"]
            return AffineRoot((int(a), int(b)), int(obj["level"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed affine root {obj!r}") from exc


def base_level(d: Root) -> int:
    """Lowest legal level in direction d: 0 for positive, 1 for negative dirs."""
    return 0 if R.is_positive(d) else 1


def is_positive(r: AffineRoot) -> bool:
    return r.level >= base_level(r.dir)


def bottom(d: Root) -> AffineRoot:
    """alpha_0: the lowest positive affine root in direction d."""
    return AffineRoot(d, base_level(d))


def simple_roots(tag: str) -> Tuple[AffineRoot, AffineRoot, AffineRoot]:
    """Affine simple roots in generator order (alpha, beta, delta - highest)."""
    rs = R.get(tag)
    return (AffineRoot((1, 0), 0), AffineRoot((0, 1), 0), AffineRoot(R.neg(rs.highest), 1))


def reflect(rs: R.RootSystem, mirror: AffineRoot, x: AffineRoot) -> AffineRoot:
    c = rs.pair(x.dir, mirror.dir)
    return AffineRoot((x.dir[0] - c * mirror.dir[0], x.dir[1] - c * mirror.dir[1]),
                      x.level - c * mirror.level)


# -- interval helpers ----------------------------------------------------

def _normalize(ivs: Iterable[Interval], lo_min: int) -> Tuple[Interval, ...]:
    items = []
    for lo, hi in ivs:
        lo = max(lo, lo_min)
        if hi is not None and hi < lo:
            continue
        items.append((lo, hi))
    items.sort(key=lambda iv: iv[0])
    out: List[List] = []
    for lo, hi in items:
        if out and (out[-1][1] is None or lo <= out[-1][1] + 1):
            if out[-1][1] is not None and (hi is None or hi > out[-1][1]):
                out[-1][1] = hi
            continue
        out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


def _intersect(a: Sequence[Interval], b: Sequence[Interval]) -> List[Interval]:
    out = []
    for lo1, hi1 in a:
        for lo2, hi2 in b:
            lo = max(lo1, lo2)
            if hi1 is None:
                hi = hi2
            elif hi2 is None:
                hi = hi1
            else:
                hi = min(hi1, hi2)
            if hi is None or lo <= hi:
                out.append((lo, hi))
    return out


def _complement(ivs: Sequence[Interval], lo_min: int) -> List[Interval]:
    out = []
    cur = lo_min
    for lo, hi in ivs:
        if lo > cur:
            out.append((cur, lo - 1))
        if hi is None:
            return out
        cur = hi + 1
    out.append((cur, None))
    return out


def _size(ivs: Sequence[Interval]) -> Union[int, float]:
    total = 0
    for lo, hi in ivs:
        if hi is None:
            return INFINITE
        total += hi - lo + 1
    return total


class EPSet:
    """Exact subset of the positive affine roots, given by level intervals."""

    __slots__ = ("tag", "_iv", "_key", "_hash")

    def __init__(self, tag: str, intervals: Mapping[Root, Iterable[Interval]] = ()):
        rs = R.get(tag)
        iv = {}
        for d, ivs in dict(intervals).items():
            d = tuple(d)
            if d not in rs.root_set:
                raise ValueError(f"{d} is not a root of {tag}")
            norm = _normalize(ivs, base_level(d))
            if norm:
                iv[d] = norm
        self.tag = tag
        self._iv = iv
        self._key = tuple(sorted(iv.items()))
        self._hash = hash((tag, self._key))

    # -- constructors ---------------------------------------------------

    @classmethod
    def empty(cls, tag: str) -> "EPSet":
        return cls(tag)

    @classmethod
    def full(cls, tag: str) -> "EPSet":
        return cls.hat(tag, R.get(tag).roots)

    @classmethod
    def hat(cls, tag: str, dirs: Iterable[Root]) -> "EPSet":
        """All positive affine roots whose direction lies in ``dirs``."""
        return cls(tag, {d: [(base_level(d), None)] for d in dirs})

    @classmethod
    def from_roots(cls, tag: str, roots: Iterable[AffineRoot]) -> "EPSet":
        by_dir: Dict[Root, List[Interval]] = {}
        for r in roots:
            r = AffineRoot(tuple(r[0]), r[1])
            if not is_positive(r):
                raise ValueError(f"{r} is not a positive affine root")
            by_dir.setdefault(r.dir, []).append((r.level, r.level))
        return cls(tag, by_dir)

    # -- queries --------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, EPSet) and self.tag == other.tag and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        parts = []
        for d, ivs in self._key:
            parts.append(f"{d[0]},{d[1]}:" + "|".join(
                f"[{lo},{'inf' if hi is None else hi}]" for lo, hi in ivs))
        return f"EPSet({self.tag}; {' '.join(parts)})"

    def directions(self) -> Tuple[Root, ...]:
        return tuple(d for d, _ in self._key)

    def levels(self, d: Root) -> Tuple[Interval, ...]:
        return self._iv.get(tuple(d), ())

    def items(self):
        return self._key

    def __contains__(self, r) -> bool:
        d, n = tuple(r[0]), r[1]
        for lo, hi in self._iv.get(d, ()):
            if n >= lo and (hi is None or n <= hi):
                return True
        return False

    @property
    def is_canonical(self) -> bool:
        return all(len(ivs) == 1 for ivs in self._iv.values())

    def is_empty(self) -> bool:
        return not self._iv

    def is_finite(self) -> bool:
        return all(ivs[-1][1] is not None for ivs in self._iv.values())

    def cardinality(self) -> Union[int, float]:
        return sum((_size(ivs) for ivs in self._iv.values()), 0)

    def __len__(self):
        c = self.cardinality()
        if c == INFINITE:
            raise OverflowError("infinite EPSet has no len(); use cardinality()")
        return c

    def ray_directions(self) -> FrozenSet[Root]:
        """I_B: directions carrying infinitely many roots."""
        return frozenset(d for d, ivs in self._iv.items() if ivs[-1][1] is None)

    def inhabited_directions(self) -> FrozenSet[Root]:
        """A_B: directions carrying at least one root."""
        return frozenset(self._iv)

    def max_finite_level(self) -> int:
        """Largest level appearing as a finite endpoint or ray start (0 if empty)."""
        m = 0
        for ivs in self._iv.values():
            for lo, hi in ivs:
                m = max(m, lo if hi is None else hi)
        return m

    def run_from_base(self, d: Root) -> Union[int, float]:
        """Number of consecutive levels present starting at the base level of d."""
        ivs = self._iv.get(d, ())
        if not ivs or ivs[0][0] != base_level(d):
            return 0
        lo, hi = ivs[0]
        return INFINITE if hi is None else hi - lo + 1

    def truncate(self, n_max: int) -> FrozenSet[AffineRoot]:
        out = []
        for d, ivs in self._iv.items():
            for lo, hi in ivs:
                top = n_max if hi is None else min(hi, n_max)
                out.extend(AffineRoot(d, n) for n in range(lo, top + 1))
        return frozenset(out)

    def __iter__(self) -> Iterator[AffineRoot]:
        if not self.is_finite():
            raise ValueError("cannot iterate an infinite EPSet; use truncate()")
        for d, ivs in self._key:
            for lo, hi in ivs:
                for n in range(lo, hi + 1):
                    yield AffineRoot(d, n)

    # -- algebra --------------------------------------------------------

    def _check(self, other: "EPSet"):
        if self.tag != other.tag:
            raise ValueError(f"type mismatch: {self.tag} vs {other.tag}")

    def union(self, other: "EPSet") -> "EPSet":
        self._check(other)
        dirs = set(self._iv) | set(other._iv)
        return EPSet(self.tag, {d: self.levels(d) + other.levels(d) for d in dirs})

    def intersection(self, other: "EPSet") -> "EPSet":
        self._check(other)
        dirs = set(self._iv) & set(other._iv)
        return EPSet(self.tag, {d: _intersect(self._iv[d], other._iv[d]) for d in dirs})

    def complement(self) -> "EPSet":
        """Complement inside the positive affine roots."""
        rs = R.get(self.tag)
        return EPSet(self.tag, {d: _complement(self.levels(d), base_level(d)) for d in rs.roots})

    def difference(self, other: "EPSet") -> "EPSet":
        return self.intersection(other.complement())

    def includes(self, other: "EPSet") -> bool:
        return other.difference(self).is_empty()

    def isdisjoint(self, other: "EPSet") -> bool:
        return self.intersection(other).is_empty()

    def symmetric_difference(self, other: "EPSet") -> "EPSet":
        return self.difference(other).union(other.difference(self))

    def difference_cardinality(self, other: "EPSet") -> Union[int, float]:
        """|self minus other|, possibly math.inf."""
        return self.difference(other).cardinality()

    # -- serialization --------------------------------------------------

    def to_json(self) -> Dict[str, object]:
        out = {}
        for d, ivs in self._key:
            key = f"{d[0]},{d[1]}"
            enc = [({"kind": "ray", "lo": lo} if hi is None else {"kind": "finite", "lo": lo, "hi": hi})
                   for lo, hi in ivs]
            out[key] = enc[0] if len(enc) == 1 else enc
        return out

    @classmethod
    def from_json(cls, tag: str, obj: Mapping[str, object]) -> "EPSet":
        if not isinstance(obj, Mapping):
            raise ValueError("EPSet JSON must be an object keyed by direction")
        ivs = {}
        for key, val in obj.items():
            try:
                a, b = (int(x) for x in key.split(","))
            except ValueError as exc:
                raise ValueError(f"bad direction key {key!r}") from exc
            entries = val if isinstance(val, list) else [val]
            cur = []
            for ent in entries:
                kind = ent.get("kind")
                if kind == "ray":
                    cur.append((int(ent["lo"]), None))
                elif kind == "finite":
                    cur.append((int(ent["lo"]), int(ent["hi"])))
                else:
                    raise ValueError(f"unknown interval kind {kind!r}")
            ivs[(a, b)] = cur
        return cls(tag, ivs)


# -- combining two roots ---------------------------------------------------

@lru_cache(maxsize=None)
def combine_table(tag: str) -> Dict[Tuple[Root, Root], Tuple[Tuple[Root, Fraction, Fraction], ...]]:
    """For independent directions (u, v): every root t = k1*u + k2*v with k1, k2 > 0."""
    rs = R.get(tag)
    table = {}
    for u in rs.roots:
        for v in rs.roots:
            if u[0] * v[1] - u[1] * v[0] == 0:
                continue
            hits = []
            for t in rs.roots:
                k = R.cone_coefficients(u, v, t)
                if k[0] > 0 and k[1] > 0:
                    hits.append((t, k[0], k[1]))
            table[(u, v)] = tuple(hits)
    return table


def combine(tag: str, a: AffineRoot, b: AffineRoot, window: Optional[int] = None
            ) -> List[Tuple[AffineRoot, Fraction, Fraction]]:
    """Positive affine roots k1*a + k2*b with k1, k2 > 0.

    Opposite directions produce two infinite delta-strings, so ``window`` (max
    level) is required in that case.
    """
    for r in (a, b):
        if not is_positive(r):
            raise ValueError(f"{r} is not positive")
    out = []
    if a.dir == b.dir:
        lo, hi = sorted((a.level, b.level))
        for n in range(lo + 1, hi):
            # n = k1*lo + k2*hi with k1 + k2 = 1
            k2 = Fraction(n - lo, hi - lo)
            k1 = 1 - k2
            if a.level == hi:
                k1, k2 = k2, k1
            out.append((AffineRoot(a.dir, n), k1, k2))
        return out
    if a.dir == R.neg(b.dir):
        if window is None:
            raise ValueError("opposite directions generate infinite strings; pass window")
        m, n = a.level, b.level
        for t in range(m + 1, window + 1):
            # (k2 + 1)(dir, m) + k2(-dir, n): level m + k2 (m + n)
            k2 = Fraction(t - m, m + n)
            out.append((AffineRoot(a.dir, t), k2 + 1, k2))
        for t in range(n + 1, window + 1):
            k1 = Fraction(t - n, m + n)
            out.append((AffineRoot(b.dir, t), k1, k1 + 1))
        return out
    for t, k1, k2 in combine_table(tag)[(a.dir, b.dir)]:
        lvl = k1 * a.level + k2 * b.level
        if lvl.denominator == 1:
            out.append((AffineRoot(t, int(lvl)), k1, k2))
    return out


# -- exact closure -------------------------------------------------------

class ClosureDivergence(RuntimeError):
    pass


@lru_cache(maxsize=None)
def _integer_combine_table(tag: str):
    """combine_table with k1 = p1/q and k2 = p2/q over a common denominator q."""
    out = {}
    for key, hits in combine_table(tag).items():
        rows = []
        for t, k1, k2 in hits:
            q = k1.denominator * k2.denominator // math.gcd(k1.denominator, k2.denominator)
            rows.append((t, int(k1 * q), int(k2 * q), q))
        out[key] = tuple(rows)
    return out


def _reach(iv1, iv2, p1: int, p2: int, q: int):
    """Min and max integer values of (p1*n1 + p2*n2)/q over the two level intervals."""
    (a1, b1), (a2, b2) = iv1, iv2
    lo = None
    for n1 in range(a1, int(min(b1, a1 + q - 1)) + 1):
        for n2 in range(a2, int(min(b2, a2 + q - 1)) + 1):
            v = p1 * n1 + p2 * n2
            if v % q == 0 and (lo is None or v < lo):
                lo = v
    if lo is None:
        return None
    if b1 == INFINITE or b2 == INFINITE:
        return lo // q, INFINITE
    hi = None
    for n1 in range(max(a1, b1 - q + 1), b1 + 1):
        for n2 in range(max(a2, b2 - q + 1), b2 + 1):
            v = p1 * n1 + p2 * n2
            if v % q == 0 and (hi is None or v > hi):
                hi = v
    return lo // q, hi // q


def closure(tag: str, gens: Union[EPSet, Iterable[AffineRoot]]) -> EPSet:
    """Least closed subset of the positive affine roots containing ``gens``."""
    state: Dict[Root, List] = {}
    if isinstance(gens, EPSet):
        for d, ivs in gens.items():
            hi = ivs[-1][1]
            state[d] = [ivs[0][0], INFINITE if hi is None else hi]
    else:
        for r in gens:
            r = AffineRoot(tuple(r[0]), r[1])
            if not is_positive(r):
                raise ValueError(f"generator {r} is not a positive affine root")
            cur = state.get(r.dir)
            if cur is None:
                state[r.dir] = [r.level, r.level]
            else:
                cur[0], cur[1] = min(cur[0], r.level), max(cur[1], r.level)
    table = _integer_combine_table(tag)
    top = max((iv[1] for iv in state.values() if iv[1] != INFINITE), default=0)
    top = max(top, max((iv[0] for iv in state.values()), default=0))
    limit = 40 * (top + 2)
    changed = True
    while changed:
        changed = False
        for d in list(state):
            opp = R.neg(d)
            if opp in state:
                for x in (d, opp):
                    if state[x][1] != INFINITE:
                        state[x][1] = INFINITE
                        changed = True
        dirs = list(state)
        for i, u in enumerate(dirs):
            for v in dirs[i + 1:]:
                hits = table.get((u, v))
                if not hits:
                    continue
                for t, p1, p2, q in hits:
                    got = _reach(state[u], state[v], p1, p2, q)
                    if got is None:
                        continue
                    lo, hi = got
                    cur = state.get(t)
                    if cur is None:
                        state[t] = [lo, hi]
                        changed = True
                    else:
                        if lo < cur[0]:
                            cur[0] = lo
                            changed = True
                        if hi > cur[1]:
                            cur[1] = hi
                            changed = True
                    if state[t][1] != INFINITE and state[t][1] > limit:
                        raise ClosureDivergence(
                            f"finite level in direction {t} exceeded {limit}; refusing to guess a ray")
    return EPSet(tag, {d: [(lo, None if hi == INFINITE else hi)] for d, (lo, hi) in state.items()})


def is_closed(tag: str, s: EPSet) -> bool:
    return closure(tag, s) == s


# -- windowed brute force --------------------------------------------------

@lru_cache(maxsize=None)
def _kernel_tables(tag: str):
    rs = R.get(tag)
    dirs = rs.roots
    idx = {d: i for i, d in enumerate(dirs)}
    nd = len(dirs)
    opposite = [idx[R.neg(d)] for d in dirs]
    base = [base_level(d) for d in dirs]
    offsets, targets, p1s, p2s, qs = [0], [], [], [], []
    table = combine_table(tag)
    for u in dirs:
        for v in dirs:
            for t, k1, k2 in table.get((u, v), ()):
                q = k1.denominator * k2.denominator // math.gcd(k1.denominator, k2.denominator)
                targets.append(idx[t])
                p1s.append(int(k1 * q))
                p2s.append(int(k2 * q))
                qs.append(q)
            offsets.append(len(targets))
    return dirs, idx, nd, opposite, base, offsets, targets, p1s, p2s, qs


def closure_window(tag: str, gens: Iterable[AffineRoot], window: int) -> FrozenSet[AffineRoot]:
    """Naive pairwise fixpoint over the positive affine roots of level <= window."""
    from ._backend import window_closure

    if window < 1:
        raise ValueError("window must be >= 1")
    dirs, idx, nd, opposite, base, offsets, targets, p1s, p2s, qs = _kernel_tables(tag)
    seeds = []
    for r in gens:
        r = AffineRoot(tuple(r[0]), r[1])
        if not is_positive(r):
            raise ValueError(f"generator {r} is not a positive affine root")
        if r.level <= window:
            seeds.append((idx[r.dir], r.level))
    out = window_closure(nd, opposite, base, offsets, targets, p1s, p2s, qs, seeds, window)
    return frozenset(AffineRoot(dirs[d], n) for d, n in out)


def safe_window(gens: Union[EPSet, Iterable[AffineRoot]]) -> int:
    """Oracle window with margin: (max generator level) * 3 + 4."""
    if isinstance(gens, EPSet):
        top = gens.max_finite_level()
    else:
        top = max((r[1] for r in gens), default=0)
    return 3 * top + 4


def is_closed_window(tag: str, roots: Iterable[AffineRoot], window: int) -> bool:
    s = frozenset(r for r in roots if r[1] <= window)
    return closure_window(tag, s, window) == s


def is_biclosed_window(s: EPSet, window: int) -> bool:
    inside = s.truncate(window)
    outside = s.complement().truncate(window)
    return is_closed_window(s.tag, inside, window) and is_closed_window(s.tag, outside, window)


# -- affine Weyl group words -------------------------------------------------

Word = Tuple[int, ...]


def apply_word(tag: str, word: Sequence[int], r: AffineRoot) -> AffineRoot:
    """w(r) for w = s_{i1} ... s_{ik} (rightmost letter acts first)."""
    rs = R.get(tag)
    simple = simple_roots(tag)
    for s in reversed(word):
        r = reflect(rs, simple[s], r)
    return r


def root_sequence(tag: str, word: Sequence[int]) -> List[AffineRoot]:
    """Roots s_1...s_{i-1}(alpha_{s_i}); all positive iff the word is reduced."""
    simple = simple_roots(tag)
    return [apply_word(tag, word[:i], simple[s]) for i, s in enumerate(word)]


def is_reduced(tag: str, word: Sequence[int]) -> bool:
    return all(is_positive(r) for r in root_sequence(tag, word))


def finite_part(tag: str, word: Sequence[int], d: Root) -> Root:
    """pi(w)(d): the image of a finite root under the linear part of w."""
    rs = R.get(tag)
    simple = simple_roots(tag)
    for s in reversed(word):
        d = rs.reflect(simple[s].dir, d)
    return d
