"""Braid graphs on restricted reflection orders.

A vertex is a total order on a finite set R of positive affine roots that is
the restriction of some reflection order. Every reflection order has an
initial section hat(Psi^+) for a positive system Psi^+ of the finite root
system (the pivot), so a vertex is certified by

* a reduced word x with Phi_x inside hat(Psi^+) whose root sequence meets R in
  the roots of R below the pivot, in order, and
* a reduced word y with Phi_y inside hat(-Psi^+) whose root sequence meets R
  in the roots above the pivot, in reverse order.

Edges reverse a dihedral substring: a block of the order equal to R cut with
the positive roots of a plane through the origin.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from . import roots as R
from .affine import (AffineRoot, EPSet, Word, apply_word, base_level, bottom, is_biclosed_window,
                     is_positive, root_sequence, simple_roots)
from .biclosed import inversion_set_finite
from . import words

DEFAULT_BUDGET = 12
Order = Tuple[AffineRoot, ...]
Vec = Tuple[int, int, int]


class NotRealizable(ValueError):
    """An order that no reflection order restricts to."""


# -- geometry of affine roots as vectors (a, b, level) -----------------------------

def vec(r: AffineRoot) -> Vec:
    return (r.dir[0], r.dir[1], r.level)


def _cross(u: Vec, v: Vec) -> Vec:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u: Vec, v: Vec) -> int:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def plane_normal(u: AffineRoot, v: AffineRoot) -> Vec:
    """Primitive normal of the plane spanned by two affine roots, sign-normalized."""
    n = _cross(vec(u), vec(v))
    if n == (0, 0, 0):
        raise ValueError(f"{u} and {v} are parallel")
    g = gcd(gcd(abs(n[0]), abs(n[1])), abs(n[2]))
    n = (n[0] // g, n[1] // g, n[2] // g)
    if next(c for c in n if c) < 0:
        n = (-n[0], -n[1], -n[2])
    return n


def delta_plane(r: AffineRoot) -> Tuple[AffineRoot, AffineRoot]:
    """Two roots spanning the plane of r and delta: the bottoms of +-dir."""
    return bottom(r.dir), bottom(R.neg(r.dir))


def in_plane(normal: Vec, r: AffineRoot) -> bool:
    return _dot(normal, vec(r)) == 0


def _angular_sorted(normal: Vec, roots: Sequence[AffineRoot]) -> bool:
    """True when the roots are in one of the two angular orders of their plane.

    Positive roots of a plane lie in an angle smaller than pi, so the sign of
    the orientation of consecutive pairs must be constant.
    """
    signs = set()
    for a, b in zip(roots, roots[1:]):
        signs.add(_dot(normal, _cross(vec(a), vec(b))) > 0)
    return len(signs) <= 1


# -- vertices, substrings, moves ------------------------------------------------

@dataclass(frozen=True)
class Substring:
    plane: Tuple[AffineRoot, AffineRoot]
    start: int
    stop: int

    def to_json(self):
        return {"plane": [r.to_json() for r in self.plane], "range": [self.start, self.stop]}


def _planes(roots: Sequence[AffineRoot]) -> Dict[Vec, Tuple[AffineRoot, AffineRoot]]:
    out: Dict[Vec, Tuple[AffineRoot, AffineRoot]] = {}
    for u, v in combinations(sorted(roots), 2):
        out.setdefault(plane_normal(u, v), (u, v))
    for r in sorted(roots):
        pair = delta_plane(r)
        out.setdefault(plane_normal(*pair), pair)
    return out


def dihedral_substrings(order: Order) -> List[Substring]:
    """Blocks of ``order`` equal to R cut with a maximal dihedral subsystem.

    Every single root is its own block (some plane through it avoids the rest
    of R, as R is finite).
    """
    pos = {r: i for i, r in enumerate(order)}
    seen = set()
    out = []
    for normal, pair in _planes(order).items():
        idx = sorted(pos[r] for r in order if in_plane(normal, r))
        if idx[-1] - idx[0] + 1 != len(idx):
            continue
        key = (idx[0], idx[-1] + 1)
        if key in seen:
            continue
        seen.add(key)
        out.append(Substring(pair, key[0], key[1]))
    for i, r in enumerate(order):
        if (i, i + 1) not in seen:
            seen.add((i, i + 1))
            out.append(Substring(delta_plane(r), i, i + 1))
    return sorted(out, key=lambda s: (s.start, s.stop))


def reverse_block(order: Order, start: int, stop: int) -> Order:
    return order[:start] + tuple(reversed(order[start:stop])) + order[stop:]


def is_dihedral_substring(order: Order, sub: Substring) -> bool:
    normal = plane_normal(*sub.plane)
    block = set(order[sub.start:sub.stop])
    return block == {r for r in order if in_plane(normal, r)} or (
        sub.stop - sub.start == 1 and bool(block))


def locally_consistent(order: Order) -> bool:
    """Every dihedral plane meets R in one of its two angular orders."""
    for normal in _planes(order):
        sub = [r for r in order if in_plane(normal, r)]
        if not _angular_sorted(normal, sub):
            return False
    return True


# -- realization ------------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A pivot positive system (index into the finite Weyl group) and two words."""
    tag: str
    pivot: int
    lower: Word
    upper: Word

    def to_json(self):
        return {"pivot": self.pivot, "lower": list(self.lower), "upper": list(self.upper)}


@dataclass
class Realization:
    status: str  # "realizable", "not_realizable" or "unknown"
    witness: Optional[Witness] = None
    reason: str = ""


def pivot_set(tag: str, pivot: int) -> EPSet:
    return EPSet.hat(tag, R.get(tag).positive_systems()[pivot])


def _split(order: Order, hat_set: EPSet) -> Optional[Tuple[Order, Order]]:
    k = sum(1 for r in order if r in hat_set)
    if any(r not in hat_set for r in order[:k]):
        return None
    return order[:k], order[k:]


def _levels_ascend(seq: Sequence[AffineRoot]) -> bool:
    """Roots of one direction enter an inversion set from the bottom level upwards."""
    last: Dict[R.Root, int] = {}
    for r in seq:
        if r.dir in last and last[r.dir] > r.level:
            return False
        last[r.dir] = r.level
    return True


# -- necessary condition for an ordered crossing ----------------------------------
#
# A point p of the plane is recorded by (f_alpha(p), f_beta(p)); the root
# rho + k delta is positive on the base alcove and crossed by p when
# f_rho(p) + k < 0. For alcoves inside K, the region whose crossings all lie in
# hat(Psi^+), the alcoves above A in the weak order are exactly those in
#     U_A = {p : rho(p) < u_rho(A) for rho in Psi^+},  u_rho(A) = ceil(rho on A).
# The alcoves reachable after crossing r_1, ..., r_i in order are therefore
#     T_i = (union of U_A over alcoves A of T_{i-1}) cut with
#           {crossed r_i, not crossed r_j (j > i)} and K.
# In A2 every alcove vertex lies on walls of all three directions, so U_A is the
# closed alcove plus the cone C = {v : rho(v) <= 0 for rho in Psi^+} and the
# union is T_{i-1} + C exactly. In B2 and G2 the union is replaced by the
# larger convex set (T_{i-1} + C_1) cut with rho <= ceil(max of rho on T_{i-1}),
# where C_1 = {v : rho(v) <= 1 for rho in Psi^+}; an empty T_i then still
# proves that no witness exists, while a nonempty one proves nothing.

Point = Tuple[Fraction, Fraction]


def _clip(poly: List[Point], a: Tuple[int, int], c: int) -> List[Point]:
    """Sutherland-Hodgman clip of a convex polygon to a.x <= c."""
    out: List[Point] = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = a[0] * p[0] + a[1] * p[1] - c
        fq = a[0] * q[0] + a[1] * q[1] - c
        if fp <= 0:
            out.append(p)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _hull(points: List[Point]) -> List[Point]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        h: List[Point] = []
        for p in seq:
            while len(h) >= 2 and ((h[-1][0] - h[-2][0]) * (p[1] - h[-2][1])
                                   - (h[-1][1] - h[-2][1]) * (p[0] - h[-2][0])) <= 0:
                h.pop()
            h.append(p)
        return h

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _area2(poly: List[Point]) -> Fraction:
    n = len(poly)
    return sum((poly[i][0] * poly[(i + 1) % n][1] - poly[(i + 1) % n][0] * poly[i][1]
                for i in range(n)), Fraction(0))


def _cone_rays(tag: str, psi) -> List[Tuple[int, int]]:
    """Extreme rays of {v : rho(v) <= 0 for rho in psi}."""
    sigma, tau = _simple_of(tag, psi)
    rays = []
    for a, b in ((sigma, tau), (tau, sigma)):
        v = (a[1], -a[0])
        if b[0] * v[0] + b[1] * v[1] > 0:
            v = (-v[0], -v[1])
        rays.append(v)
    return rays


def _upward(tag: str, psi: FrozenSet[R.Root], poly: List[Point], box: Fraction) -> List[Point]:
    """A convex polygon containing every alcove above an alcove of ``poly``."""
    reach = 8 * box
    if tag == "A2":
        steps = [(Fraction(0), Fraction(0))]
    else:
        steps = [(-reach, -reach), (reach, -reach), (reach, reach), (-reach, reach)]
        for rho in psi:
            steps = _clip(steps, rho, 1)
    pts = [(p[0] + v[0], p[1] + v[1]) for p in poly for v in steps]
    for v in _cone_rays(tag, psi):
        pts += [(p[0] + reach * v[0], p[1] + reach * v[1]) for p in list(pts)]
    out = _hull(pts)
    if tag != "A2":
        for rho in psi:
            top = max(rho[0] * p[0] + rho[1] * p[1] for p in poly)
            out = _clip(out, rho, -((-top.numerator) // top.denominator))
    return out


@lru_cache(maxsize=None)
def crossing_feasible(tag: str, psi: FrozenSet[R.Root], sequence: Order) -> bool:
    """False only when no reduced word with inversions in hat(psi) meets the
    roots of ``sequence`` in this order; exact in type A2."""
    rs = R.get(tag)
    top = max([abs(r.level) for r in sequence] + [1])
    box = Fraction(64 * (top + 4))
    poly: List[Point] = [(-box, -box), (box, -box), (box, box), (-box, box)]
    # base alcove: f_alpha > 0, f_beta > 0, f_theta < 1
    for a, c in (((-1, 0), 0), ((0, -1), 0), (rs.highest, 1)):
        poly = _clip(poly, a, c)
    keep_out = [(d, base_level(d)) for d in rs.roots if d not in psi]
    for i, r in enumerate(sequence):
        poly = _upward(tag, psi, poly, box)
        for a in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            poly = _clip(poly, a, box)
        poly = _clip(poly, r.dir, -r.level)                      # crossed r_i
        for later in sequence[i + 1:]:                           # not yet crossed
            poly = _clip(poly, R.neg(later.dir), later.level)
        for d, k in keep_out:                                    # stay in hat(psi)
            poly = _clip(poly, R.neg(d), k)
        if len(poly) < 3 or _area2(poly) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def _enumerating_word(tag: str, pivot: int, sign: int, rset: FrozenSet[AffineRoot],
                      sequence: Order, budget: int) -> Optional[Word]:
    """Shortest reduced word with roots in the region whose roots from R are ``sequence``.

    The region is hat(Psi^+) for sign +1 and hat(-Psi^+) for sign -1.
    """
    region = pivot_set(tag, pivot)
    if sign < 0:
        region = region.complement()
    if not sequence:
        return ()
    simple = simple_roots(tag)
    target = len(sequence)
    start: Word = ()
    seen = {frozenset()}
    queue = deque([(start, frozenset(), 0)])
    while queue:
        word, inv, k = queue.popleft()
        if len(word) >= budget:
            continue
        for s in range(3):
            r = apply_word(tag, word, simple[s])
            if not is_positive(r) or r not in region:
                continue
            if r in rset:
                if k == target or r != sequence[k]:
                    continue
                nk = k + 1
            else:
                nk = k
            nxt = inv | {r}
            if nxt in seen:
                continue
            seen.add(nxt)
            w = word + (s,)
            if nk == target:
                return w
            queue.append((w, nxt, nk))
    return None


def realize(tag: str, order: Sequence[AffineRoot], budget: int = DEFAULT_BUDGET,
            pivots: Optional[Sequence[int]] = None) -> Realization:
    """Search for a witness; distinguishes proven failure from budget exhaustion."""
    order = tuple(AffineRoot(tuple(r[0]), r[1]) for r in order)
    if len(set(order)) != len(order) or not all(is_positive(r) for r in order):
        raise ValueError("order must list distinct positive affine roots")
    if not order:
        return Realization("realizable", Witness(tag, 0, (), ()))
    if not locally_consistent(order):
        return Realization("not_realizable", reason="a dihedral plane meets R out of angular order")
    rs = R.get(tag)
    candidates = range(len(rs.positive_systems())) if pivots is None else pivots
    viable = False
    rset = frozenset(order)
    systems = rs.positive_systems()
    for p in candidates:
        parts = _split(order, pivot_set(tag, p))
        if parts is None:
            continue
        low, high = parts
        if not (_levels_ascend(low) and _levels_ascend(high[::-1])):
            continue
        psi = systems[p]
        if not (crossing_feasible(tag, psi, low)
                and crossing_feasible(tag, frozenset(R.neg(d) for d in psi), high[::-1])):
            continue
        viable = True
        x = _enumerating_word(tag, p, 1, rset, low, budget)
        if x is None:
            continue
        y = _enumerating_word(tag, p, -1, rset, high[::-1], budget)
        if y is None:
            continue
        return Realization("realizable", Witness(tag, p, x, y))
    if not viable:
        return Realization("not_realizable",
                           reason="no pivot hat(Psi^+) admits galleries crossing the roots "
                                  "below and above it in the given order")
    return Realization("unknown", reason=f"no witness with words of length <= {budget}")


def witness_chain(order: Order, wit: Witness):
    """Biclosed sets B_1 < ... < B_m with B_i cut with R equal to the first i roots."""
    from .lattice import BElement

    tag = wit.tag
    rset = set(order)
    chain = []
    seq = root_sequence(tag, wit.lower)
    for i, r in enumerate(seq):
        if r in rset:
            chain.append(BElement(inversion_set_finite(tag, wit.lower[:i + 1]), "inv"))
    useq = root_sequence(tag, wit.upper)
    hits = [i for i, r in enumerate(useq) if r in rset]
    for i in reversed(hits):
        chain.append(BElement(inversion_set_finite(tag, wit.upper[:i]).complement(), "coinv"))
    return chain


def verify_witness(order: Sequence[AffineRoot], wit: Witness, window: Optional[int] = None) -> bool:
    """Independent check of a witness; ``window`` adds a biclosedness check per set."""
    tag = wit.tag
    order = tuple(order)
    rset = set(order)
    region = pivot_set(tag, wit.pivot)
    seq = root_sequence(tag, wit.lower)
    useq = root_sequence(tag, wit.upper)
    if not all(is_positive(r) for r in seq + useq):
        return False
    if not all(r in region for r in seq) or any(r in region for r in useq):
        return False
    low = [r for r in seq if r in rset]
    high = [r for r in reversed(useq) if r in rset]
    if tuple(low + high) != order:
        return False
    chain = witness_chain(order, wit)
    prev = EPSet.empty(tag)
    for i, b in enumerate(chain):
        if not b.epset.includes(prev):
            return False
        if {r for r in order if r in b.epset} != set(order[:i + 1]):
            return False
        if window is not None and not is_biclosed_window(b.epset, window):
            return False
        prev = b.epset
    return True


def reverse(tag: str, order: Sequence[AffineRoot], sub: Substring,
            budget: int = DEFAULT_BUDGET) -> Order:
    """Reverse a dihedral substring; NotRealizable if the result is not a vertex."""
    order = tuple(order)
    if not is_dihedral_substring(order, sub):
        raise ValueError("block is not a dihedral substring")
    out = reverse_block(order, sub.start, sub.stop)
    got = realize(tag, out, budget)
    if got.status != "realizable":
        raise NotRealizable(f"reversal gives a {got.status} order: {got.reason}")
    return out


# -- braid moves between reduced words ----------------------------------------------

def braid_m(tag: str, s: int, t: int) -> int:
    rs = R.get(tag)
    simple = simple_roots(tag)
    prod = rs.pair(simple[s].dir, simple[t].dir) * rs.pair(simple[t].dir, simple[s].dir)
    return {0: 2, 1: 3, 2: 4, 3: 6}[prod]


def _complete(tag: str, prefix: Word, target: EPSet) -> Word:
    """Extend a reduced prefix with Phi_prefix inside target to a word for target."""
    simple = simple_roots(tag)
    word = list(prefix)
    size = target.cardinality()
    while len(word) < size:
        for s in range(3):
            r = apply_word(tag, word, simple[s])
            if is_positive(r) and r in target:
                word.append(s)
                break
        else:
            raise AssertionError("prefix is not below the target")
    return tuple(word)


def _alternating(s: int, t: int, m: int) -> Word:
    return tuple(s if i % 2 == 0 else t for i in range(m))


def braid_path(tag: str, w1: Word, w2: Word) -> List[Tuple[int, int]]:
    """Braid moves (position, length) taking reduced word w1 to w2 (same element)."""
    if w1 == w2:
        return []
    if w1[0] == w2[0]:
        return [(p + 1, m) for p, m in braid_path(tag, w1[1:], w2[1:])]
    s, t = w1[0], w2[0]
    m = braid_m(tag, s, t)
    target = inversion_set_finite(tag, w1)
    a = _complete(tag, _alternating(s, t, m), target)
    b = _alternating(t, s, m) + a[m:]
    first = [(p + 1, k) for p, k in braid_path(tag, w1[1:], a[1:])]
    last = [(p + 1, k) for p, k in braid_path(tag, b[1:], w2[1:])]
    return first + [(0, m)] + last


def apply_braid_move(tag: str, word: Word, move: Tuple[int, int]) -> Word:
    p, m = move
    block = word[p:p + m]
    s, t = block[0], block[1]
    if block != _alternating(s, t, m) or braid_m(tag, s, t) != m:
        raise ValueError(f"no braid move at {move} in {word}")
    return word[:p] + _alternating(t, s, m) + word[p + m:]


# -- connecting two vertices ----------------------------------------------------------

@dataclass
class Step:
    substring: Substring
    source: Order
    target: Order
    witness: Witness

    def to_json(self):
        return {"move": self.substring.to_json(),
                "order": [r.to_json() for r in self.target],
                "witness": self.witness.to_json()}


@dataclass
class Path:
    start: Order
    steps: List[Step] = field(default_factory=list)

    @property
    def end(self) -> Order:
        return self.steps[-1].target if self.steps else self.start

    def to_json(self):
        return {"start": [r.to_json() for r in self.start],
                "steps": [st.to_json() for st in self.steps]}

    def push(self, sub: Substring, target: Order, wit: Witness):
        if target != self.end:
            self.steps.append(Step(sub, self.end, target, wit))


def _restricted(tag: str, word: Word, rset) -> List[AffineRoot]:
    return [r for r in root_sequence(tag, word) if r in rset]


def _replay_words(tag: str, path: Path, w_from: Word, w_to: Word, rset, lower: bool,
                  make_witness):
    """Apply the braid moves from w_from to w_to, pushing vertex moves onto path."""
    word = w_from
    for move in braid_path(tag, w_from, w_to):
        seq = root_sequence(tag, word)
        word = apply_braid_move(tag, word, move)
        hits = _restricted(tag, word, rset)
        cur = path.end
        if lower:
            new = tuple(hits) + cur[len(hits):]
        else:
            new = cur[:len(cur) - len(hits)] + tuple(reversed(hits))
        if new == cur:
            continue
        diff = [i for i in range(len(cur)) if cur[i] != new[i]]
        start, stop = diff[0], diff[-1] + 1
        p = move[0]
        path.push(Substring((seq[p], seq[p + 1]), start, stop), new, make_witness(word))
    if word != w_to:
        raise AssertionError("braid path did not reach its target word")


def _same_pivot(tag: str, path: Path, wit1: Witness, wit2: Witness, rset):
    """Connect two vertices sharing a pivot by braid moves on both halves."""
    x1, x2 = wit1.lower, wit2.lower
    z = words.join_bounded([words.finite(tag, x1), words.finite(tag, x2)])
    target = words.inversion_set(z)
    a1, a2 = _complete(tag, x1, target), _complete(tag, x2, target)
    upper1 = wit1.upper
    _replay_words(tag, path, a1, a2, rset, True,
                  lambda w: Witness(tag, wit1.pivot, w, upper1))
    y1, y2 = wit1.upper, wit2.upper
    z2 = words.join_bounded([words.finite(tag, y1), words.finite(tag, y2)])
    target2 = words.inversion_set(z2)
    b1, b2 = _complete(tag, y1, target2), _complete(tag, y2, target2)
    _replay_words(tag, path, b1, b2, rset, False,
                  lambda w: Witness(tag, wit1.pivot, a2, w))


def _deep_word(tag: str, half, need, avoid: Optional[R.Root] = None) -> Word:
    """A reduced word with inversions in hat(half), minus the avoid direction,
    whose inversion set contains ``need``.

    The word ascends to the alcove of q = c + M v, where c is a fixed generic
    point of the base alcove and v spans the cone C of ``half`` (or its edge
    orthogonal to ``avoid``). The fractional part of rho(q) is that of rho(c),
    so q never lies on a wall.
    """
    c = (Fraction(1, 7), Fraction(1, 11))
    rays = _cone_rays(tag, half)
    if avoid is None:
        v = (rays[0][0] + rays[1][0], rays[0][1] + rays[1][1])
    else:
        v = next(u for u in rays if avoid[0] * u[0] + avoid[1] * u[1] == 0)
    m = 1
    while True:
        q = (c[0] + m * v[0], c[1] + m * v[1])
        if all(_crossed(q, r) for r in need):
            break
        m += 1
    simple = simple_roots(tag)
    word: List[int] = []
    while True:
        for s in range(3):
            r = apply_word(tag, word, simple[s])
            if is_positive(r) and _crossed(q, r):
                word.append(s)
                break
        else:
            return tuple(word)


def _crossed(q: Point, r: AffineRoot) -> bool:
    return r.dir[0] * q[0] + r.dir[1] * q[1] + r.level < 0


def _move_to_end(tag: str, path: Path, wit: Witness, alpha: R.Root, rset,
                 lower: bool) -> Tuple[Witness, Word]:
    """Push the roots of R in the alpha delta-string to the far end of one half.

    Also returns the word y, inside hat(half minus alpha), that crosses the
    other roots of that half.
    """
    rs = R.get(tag)
    psi = rs.positive_systems()[wit.pivot]
    half = psi if lower else frozenset(R.neg(r) for r in psi)
    word = wit.lower if lower else wit.upper
    seq = _restricted(tag, word, rset)
    need = [r for r in seq if r.dir != alpha]
    y = _deep_word(tag, half, need, avoid=alpha)
    z = words.join_bounded([words.finite(tag, word), words.finite(tag, y)])
    target = words.inversion_set(z)
    full_old = _complete(tag, word, target)
    full_new = _complete(tag, y, target)
    if lower:
        upper = wit.upper
        _replay_words(tag, path, full_old, full_new, rset, True,
                      lambda w: Witness(tag, wit.pivot, w, upper))
        return Witness(tag, wit.pivot, full_new, wit.upper), y
    low = wit.lower
    _replay_words(tag, path, full_old, full_new, rset, False,
                  lambda w: Witness(tag, wit.pivot, low, w))
    return Witness(tag, wit.pivot, wit.lower, full_new), y


def _extend_across(tag: str, y: Word, half, need) -> Word:
    """Extend y, whose inversions lie in hat(half), until it covers ``need``."""
    if not need:
        return y
    p = _deep_word(tag, half, need)
    z = words.join_bounded([words.finite(tag, y), words.finite(tag, p)])
    return _complete(tag, y, words.inversion_set(z))


def _pivot_index(tag: str, psi) -> int:
    return R.get(tag).positive_systems().index(frozenset(psi))


def _simple_of(tag: str, psi) -> List[R.Root]:
    psi = set(psi)
    out = []
    for r in psi:
        if not any(R.add(a, b) == r for a in psi for b in psi):
            out.append(r)
    return sorted(out)


def connect(tag: str, order1: Sequence[AffineRoot], order2: Sequence[AffineRoot],
            budget: int = DEFAULT_BUDGET) -> Path:
    """A path of dihedral reversals from order1 to order2 following the
    induction on the number of shared positive roots of the two pivots."""
    order1, order2 = tuple(order1), tuple(order2)
    if set(order1) != set(order2) or len(order1) != len(order2):
        raise ValueError("orders must be on the same root set")
    rset = frozenset(order1)
    r1, r2 = realize(tag, order1, budget), realize(tag, order2, budget)
    for got, name in ((r1, "first"), (r2, "second")):
        if got.status != "realizable":
            raise NotRealizable(f"{name} order is {got.status}: {got.reason}")
    rs = R.get(tag)
    path = Path(order1)
    wit1, wit2 = r1.witness, r2.witness
    for _ in range(len(rs.roots)):
        psi1 = rs.positive_systems()[wit1.pivot]
        psi2 = rs.positive_systems()[wit2.pivot]
        if psi1 == psi2:
            break
        alpha = next(a for a in _simple_of(tag, psi1) if R.neg(a) in psi2)
        wit, y_low = _move_to_end(tag, path, wit1, alpha, rset, True)
        wit, y_up = _move_to_end(tag, path, wit, R.neg(alpha), rset, False)
        cur = path.end
        normal = plane_normal(*delta_plane(bottom(alpha)))
        idx = [i for i, r in enumerate(cur) if in_plane(normal, r)]
        psi3 = (psi1 - {alpha}) | {R.neg(alpha)}
        pivot3 = _pivot_index(tag, psi3)
        if idx:
            if idx[-1] - idx[0] + 1 != len(idx):
                raise AssertionError("delta-string block is not contiguous")
            flipped = reverse_block(cur, idx[0], idx[-1] + 1)
        else:
            flipped = cur
        # the -alpha roots join the lower half, the alpha roots the upper one
        low3 = _extend_across(tag, y_low, psi3, [r for r in rset if r.dir == R.neg(alpha)])
        up3 = _extend_across(tag, y_up, frozenset(R.neg(d) for d in psi3),
                             [r for r in rset if r.dir == alpha])
        wit3 = Witness(tag, pivot3, low3, up3)
        if not verify_witness(flipped, wit3):
            raise AssertionError(f"flip across {alpha} lost its witness")
        if idx:
            path.push(Substring(delta_plane(bottom(alpha)), idx[0], idx[-1] + 1), flipped, wit3)
        wit1 = wit3
    else:
        raise AssertionError("pivot induction did not terminate")
    if wit1.pivot != wit2.pivot:
        raise AssertionError("pivots differ after the induction")
    _same_pivot(tag, path, wit1, wit2, rset)
    if path.end != order2:
        raise AssertionError("path does not end at the second order")
    return path


def verify_path(tag: str, path: Path, order2: Sequence[AffineRoot]) -> bool:
    """Each step reverses a dihedral substring of its source and lands on a certified vertex."""
    cur = path.start
    for st in path.steps:
        if st.source != cur or not is_dihedral_substring(cur, st.substring):
            return False
        if reverse_block(cur, st.substring.start, st.substring.stop) != st.target:
            return False
        if not verify_witness(st.target, st.witness):
            return False
        cur = st.target
    return cur == tuple(order2)


# -- the whole graph ------------------------------------------------------------------

@dataclass
class BraidGraph:
    tag: str
    roots: Tuple[AffineRoot, ...]
    vertices: List[Order]
    witnesses: Dict[Order, Witness]
    edges: List[Tuple[int, int, Substring]]
    unknown: List[Order]
    gaps: List[Order]

    def components(self) -> List[List[int]]:
        parent = list(range(len(self.vertices)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b, _ in self.edges:
            parent[find(a)] = find(b)
        groups: Dict[int, List[int]] = {}
        for i in range(len(self.vertices)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def to_json(self):
        return {
            "schema": 1,
            "type": self.tag,
            "roots": [r.to_json() for r in self.roots],
            "vertices": [[r.to_json() for r in v] for v in self.vertices],
            "edges": [{"source": a, "target": b, "move": s.to_json()} for a, b, s in self.edges],
            "components": self.components(),
            "unknown": [[r.to_json() for r in v] for v in self.unknown],
            "local_but_unrealized": [[r.to_json() for r in v] for v in self.gaps],
        }

    def to_dot(self) -> str:
        def label(v):
            return ", ".join(str(r) for r in v)

        lines = ["graph braid {"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{label(v)}"];')
        for a, b, _ in self.edges:
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_braid_graph(tag: str, roots: Sequence[AffineRoot], budget: int = DEFAULT_BUDGET
                      ) -> BraidGraph:
    """All realizable orders on R with their dihedral-reversal edges."""
    roots = tuple(sorted(set(AffineRoot(tuple(r[0]), r[1]) for r in roots)))
    vertices, witnesses, unknown, gaps = [], {}, [], []
    for perm in permutations(roots):
        got = realize(tag, perm, budget)
        if got.status == "realizable":
            vertices.append(perm)
            witnesses[perm] = got.witness
        else:
            if got.status == "unknown":
                unknown.append(perm)
            if locally_consistent(perm):
                gaps.append(perm)
    index = {v: i for i, v in enumerate(vertices)}
    edges = []
    for i, v in enumerate(vertices):
        for sub in dihedral_substrings(v):
            if sub.stop - sub.start < 2:
                continue
            j = index.get(reverse_block(v, sub.start, sub.stop))
            if j is not None and i < j:
                edges.append((i, j, sub))
    return BraidGraph(tag, roots, vertices, witnesses, edges, unknown, gaps)
