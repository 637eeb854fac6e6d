"""Brute-force verification suites.

Each suite re-derives a structural property by direct enumeration or by an
implementation route independent of the one under test, and reports every
counterexample as a JSON-ready payload.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Any, Callable, Dict, List, Optional, Sequence

from . import braid, lattice, words
from . import roots as R
from .affine import (AffineRoot, EPSet, base_level, closure, closure_window, is_biclosed_window,
                     root_sequence)
from .biclosed import act, act_formula, base_set, orthogonal_pairs
from .lattice import BElement

SCHEMA = 1


@dataclass
class OracleReport:
    suite: str
    params: Dict[str, Any]
    cases: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, **payload):
        self.failures.append(payload)

    def to_json(self) -> Dict[str, Any]:
        return {"schema": SCHEMA, "suite": self.suite, "params": self.params, "cases": self.cases,
                "failures": self.failures, "ok": self.ok}


def _types(params) -> List[str]:
    t = params.get("type")
    if t is None:
        return list(R.TYPES)
    if t not in R.TYPES:
        raise ValueError(f"unknown root system type {t!r}")
    return [t]


def _roots_json(rs: Sequence[AffineRoot]):
    return [r.to_json() for r in rs]


# -- finite root identities ---------------------------------------------------------

def _d_equals_h(rep: OracleReport, params):
    for tag in _types(params):
        rs = R.get(tag)
        for L in ((), (0,), (1,), (0, 1)):
            for root in rs.positive:
                rep.cases += 1
                d, h = rs.d(root, L), rs.h(root, L)
                if d != h:
                    rep.fail(type=tag, L=list(L), root=list(root), d=d, h=h)


def _three_root_sum(rep: OracleReport, params):
    for tag in _types(params):
        rs = R.get(tag)
        pos = set(rs.positive)
        for a in rs.positive:
            for b in rs.positive:
                ab = R.add(a, b)
                if ab not in pos:
                    continue
                for c in rs.positive:
                    if R.add(ab, c) not in pos:
                        continue
                    rep.cases += 1
                    if R.add(a, c) not in pos and R.add(b, c) not in pos:
                        rep.fail(type=tag, triple=[list(a), list(b), list(c)])


# -- closure --------------------------------------------------------------------------

def _closure_formula(rep: OracleReport, params):
    ns = params.get("n", [1, 2, 3, 4])
    for tag in _types(params):
        rs = R.get(tag)
        for L in ((), (0,), (1,)):
            dirs = rs.phi_plus_minus(L)
            for n in ns:
                rep.cases += 1
                gens = [AffineRoot(d, k) for d in dirs for k in range(n + 1)]
                expected = EPSet.from_roots(tag, [AffineRoot(d, k) for d in dirs
                                                  for k in range(n * rs.d(d, L) + 1)])
                got = closure(tag, gens)
                # naive fixpoint on a window well above every expected level
                window = 3 * n * max(rs.d(d, L) for d in dirs) + 4
                naive = closure_window(tag, gens, window)
                if got != expected or naive != expected.truncate(window):
                    rep.fail(type=tag, L=list(L), n=n, closure=got.to_json(),
                             expected=expected.to_json())


def _dominance(rep: OracleReport, params):
    max_len = params.get("max_len", 8)
    for tag in _types(params):
        for x in words.elements_up_to(tag, max_len):
            rep.cases += 1
            inv = set(root_sequence(tag, x.w))
            for r in inv:
                missing = [j for j in range(base_level(r.dir), r.level)
                           if AffineRoot(r.dir, j) not in inv]
                if missing:
                    rep.fail(type=tag, word=list(x.w), root=r.to_json(), missing_levels=missing)
                    break


# -- the W-action -------------------------------------------------------------------

def _action_laws(rep: OracleReport, params):
    max_len = params.get("max_len", 3)
    window = params.get("window", 10)
    for tag in _types(params):
        full = EPSet.full(tag)
        ws = [x.w for x in words.elements_up_to(tag, max_len)]
        gammas = [base_set(tag, L, K) for L, K in orthogonal_pairs(tag)]
        for g in gammas:
            for x in ws:
                rep.cases += 1
                gx = act(x, g)
                if gx != act_formula(x, g):
                    rep.fail(type=tag, law="simple steps agree with the direct formula",
                             word=list(x), gamma=g.to_json())
                if act(x, full.difference(g)) != full.difference(gx):
                    rep.fail(type=tag, law="commutes with complement", word=list(x),
                             gamma=g.to_json())
                if not is_biclosed_window(gx, window):
                    rep.fail(type=tag, law="preserves biclosedness", word=list(x),
                             gamma=g.to_json())
                for y in ws:
                    if len(x) + len(y) > max_len:
                        continue
                    if act(tuple(x) + tuple(y), g) != act(x, act(y, g)):
                        rep.fail(type=tag, law="group action", x=list(x), y=list(y),
                                 gamma=g.to_json())


# -- ortholattice laws ---------------------------------------------------------------

def _lattice_laws(rep: OracleReport, params):
    max_len = params.get("max_len", 6)
    pairs = params.get("pairs", 150)
    rng = random.Random(params.get("seed", 0))
    for tag in _types(params):
        sample = lattice.sample_elements(tag, max_len)
        top, bot = BElement.top(tag), BElement.bottom(tag)
        for b in sample:
            rep.cases += 1
            c = lattice.complement(b)
            checks = {
                "complement is an involution": lattice.complement(c).epset == b.epset,
                "B join complement is the top": lattice.join(b, c).epset == top.epset,
                "B meet complement is empty": lattice.meet(b, c).epset == bot.epset,
                "join is idempotent": lattice.join(b, b).epset == b.epset,
                "meet is idempotent": lattice.meet(b, b).epset == b.epset,
            }
            for law, good in checks.items():
                if not good:
                    rep.fail(type=tag, law=law, element=b.to_json())
        for _ in range(pairs):
            b1, b2 = rng.choice(sample), rng.choice(sample)
            rep.cases += 1
            j, m = lattice.join(b1, b2), lattice.meet(b1, b2)
            checks = {
                "join commutes": lattice.join(b2, b1).epset == j.epset,
                "meet commutes": lattice.meet(b2, b1).epset == m.epset,
                "absorption b1 join (b1 meet b2)": lattice.join(b1, m).epset == b1.epset,
                "absorption b1 meet (b1 join b2)": lattice.meet(b1, j).epset == b1.epset,
                "join is an upper bound": j.epset.includes(b1.epset) and j.epset.includes(b2.epset),
                "meet is a lower bound": b1.epset.includes(m.epset) and b2.epset.includes(m.epset),
            }
            if b2.epset.includes(b1.epset):
                checks["complement reverses order"] = lattice.complement(b1).epset.includes(
                    lattice.complement(b2).epset)
            for c in sample:
                e = c.epset
                if e.includes(b1.epset) and e.includes(b2.epset) and not e.includes(j.epset):
                    checks["join is least within the sample"] = False
                if b1.epset.includes(e) and b2.epset.includes(e) and not m.epset.includes(e):
                    checks["meet is greatest within the sample"] = False
            for law, good in checks.items():
                if not good:
                    rep.fail(type=tag, law=law, b1=b1.to_json(), b2=b2.to_json())


# -- structural lemmas on W-bar -------------------------------------------------------

def _wbar_sample(tag: str, max_len: int) -> List[words.WBar]:
    out = list(words.elements_up_to(tag, max_len))
    seen = set()
    for x in list(out):
        for L in ((), (0,), (1,)):
            y = words.infinite(tag, x.w, L)
            if (y.w, y.L) not in seen:
                seen.add((y.w, y.L))
                out.append(y)
    return out


def _jop(rep: OracleReport, params):
    max_len = params.get("max_len", 3)
    for tag in _types(params):
        sample = _wbar_sample(tag, max_len)
        sets = [words.inversion_set(x) for x in sample]
        for i, j in combinations(range(len(sample)), 2):
            try:
                w = words.join_bounded([sample[i], sample[j]])
            except words.Unbounded:
                continue
            phi_w = words.inversion_set(w)
            for k, phi_v in enumerate(sets):
                if phi_v.isdisjoint(sets[i]) and phi_v.isdisjoint(sets[j]):
                    rep.cases += 1
                    if not phi_v.isdisjoint(phi_w):
                        rep.fail(type=tag, family=[words.to_json(sample[i]),
                                                   words.to_json(sample[j])],
                                 v=words.to_json(sample[k]), join=words.to_json(w))


def _distance_not_one(rep: OracleReport, params):
    max_len = params.get("max_len", 3)
    for tag in _types(params):
        sample = _wbar_sample(tag, max_len)
        sets = [words.inversion_set(x) for x in sample]
        comps = [s.complement() for s in sets]
        for i, x_c in enumerate(comps):
            for j, y in enumerate(sets):
                rep.cases += 1
                if y.includes(x_c) and y != x_c:
                    rep.fail(type=tag, lemma="complement strictly inside an inversion set",
                             x=words.to_json(sample[i]), y=words.to_json(sample[j]))
                if x_c.includes(y) and x_c.difference_cardinality(y) == 1:
                    rep.fail(type=tag, lemma="complement exceeds an inversion set by one root",
                             v=words.to_json(sample[i]), u=words.to_json(sample[j]))


def _quasi_positive(rep: OracleReport, params):
    for n in params.get("windows", [6, 10]):
        rep.cases += 1
        got = lattice.quasi_positive_counterexample(n)
        if not (got["inputs_biclosed"] and all(got["verdicts"])):
            rep.fail(**got)


# -- braid graphs ---------------------------------------------------------------------

def brute_vertices(tag: str, rset: Sequence[AffineRoot], budget: int) -> set:
    """Realizable orders found by enumerating every reduced word up to ``budget``.

    An order is recorded when some pivot hat(Psi^+) admits a word x inside it
    and a word y inside hat(-Psi^+) whose hits on R, x's in order followed by
    y's reversed, list R.
    """
    rset = frozenset(rset)
    systems = R.get(tag).positive_systems()
    lower: Dict[int, set] = {p: set() for p in range(len(systems))}
    upper: Dict[int, set] = {p: set() for p in range(len(systems))}
    for w in words.all_reduced_words(tag, budget):
        seq = root_sequence(tag, w)
        dirs = {r.dir for r in seq}
        hits = tuple(r for r in seq if r in rset)
        for p, psi in enumerate(systems):
            if dirs <= psi:
                lower[p].add(hits)
            if all(R.neg(d) in psi for d in dirs):
                upper[p].add(hits)
    out = set()
    for p, psi in enumerate(systems):
        inside = {r for r in rset if r.dir in psi}
        lows = [h for h in lower[p] if set(h) == inside]
        ups = [h for h in upper[p] if set(h) == rset - inside]
        for lo in lows:
            for up in ups:
                out.add(lo + up[::-1])
    return out


def brute_components(vertices) -> List[List[tuple]]:
    """Connected components under reversal of blocks lying on one plane."""
    vs = sorted(vertices)
    index = {v: i for i, v in enumerate(vs)}
    parent = list(range(len(vs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for v in vs:
        n = len(v)
        for a in range(n):
            for b in range(a + 1, n + 1):
                block = v[a:b]
                if len(block) >= 2 and not _coplanar_with_origin_and_delta(block, v):
                    continue
                u = v[:a] + block[::-1] + v[b:]
                if u in index:
                    parent[find(index[u])] = find(index[v])
    groups: Dict[int, List[tuple]] = {}
    for v in vs:
        groups.setdefault(find(index[v]), []).append(v)
    return sorted(groups.values())


def _coplanar_with_origin_and_delta(block, order) -> bool:
    # the block must be exactly the roots of R on one plane through 0
    vecs = [(r.dir[0], r.dir[1], r.level) for r in block]
    u = vecs[0]
    normal = None
    for v in vecs[1:]:
        n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
        if n != (0, 0, 0):
            normal = n
            break
    if normal is None:
        # parallel vectors: the plane through them and delta
        v = (0, 0, 1)
        normal = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])

    def on(w):
        return normal[0] * w[0] + normal[1] * w[1] + normal[2] * w[2] == 0

    if not all(on(w) for w in vecs):
        return False
    return sum(on((r.dir[0], r.dir[1], r.level)) for r in order) == len(block)


def _braid_bruteforce(rep: OracleReport, params):
    tag = params.get("type") or "A2"
    if tag not in R.TYPES:
        raise ValueError(f"unknown root system type {tag!r}")
    max_size = params.get("max_size", 3)
    max_level = params.get("max_level", 1)
    budget = params.get("budget", 8)
    rs = R.get(tag)
    pool = [AffineRoot(d, k) for d in rs.roots for k in range(base_level(d), max_level + 1)]
    for size in range(1, max_size + 1):
        for rset in combinations(sorted(pool), size):
            rep.cases += 1
            brute = brute_vertices(tag, rset, budget)
            graph = braid.build_braid_graph(tag, list(rset), budget)
            found = set(graph.vertices)
            if found != brute:
                rep.fail(type=tag, R=_roots_json(rset), check="vertex sets agree",
                         only_search=[_roots_json(v) for v in sorted(found - brute)],
                         only_brute=[_roots_json(v) for v in sorted(brute - found)])
                continue
            for v in permutations(rset):
                if v in brute:
                    continue
                got = braid.realize(tag, v, budget)
                if got.status == "realizable":
                    rep.fail(type=tag, R=_roots_json(rset), check="non-vertex realized",
                             order=_roots_json(v))
            comps = brute_components(brute)
            ours = sorted(sorted(graph.vertices[i] for i in c) for c in graph.components())
            if ours != comps:
                rep.fail(type=tag, R=_roots_json(rset), check="components agree")
            if len(comps) > 1:
                rep.fail(type=tag, R=_roots_json(rset), check="graph is connected",
                         components=len(comps))
            vs = sorted(brute)
            if len(vs) >= 2:
                path = braid.connect(tag, vs[0], vs[-1], budget)
                if not braid.verify_path(tag, path, vs[-1]):
                    rep.fail(type=tag, R=_roots_json(rset), check="connect path verifies")


SUITES: Dict[str, Callable[[OracleReport, Dict[str, Any]], None]] = {
    "d_equals_h": _d_equals_h,
    "three_root_sum": _three_root_sum,
    "closure_formula": _closure_formula,
    "dominance": _dominance,
    "action_laws": _action_laws,
    "lattice_laws": _lattice_laws,
    "jop": _jop,
    "distance_not_one": _distance_not_one,
    "quasi_positive": _quasi_positive,
    "braid_bruteforce": _braid_bruteforce,
}


def run_suite(name: str, params: Optional[Dict[str, Any]] = None) -> OracleReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    params = dict(params or {})
    params.setdefault("seed", 0)
    rep = OracleReport(name, params)
    start = time.perf_counter()
    SUITES[name](rep, params)
    rep.seconds = time.perf_counter() - start
    return rep
