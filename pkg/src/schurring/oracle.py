"""Brute-force ground truth.

* Automorphisms of the colored Cayley graph C[i][j] = class of (j - i),
  found by individualization and color refinement (numpy-vectorized).
* Two independent enumerators of all S-rings over Z_n: a filtered search
  over negation-invariant partitions, and a recursive generator built from
  cyclotomic rings, tensor products and generalized wreath products.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterator

import numpy as np

from .arith import divisors, subgroup_closure, units
from .errors import BoundExceeded, SearchBudgetExceeded, SRingError
from .lattice import Section
from .ring import SRing, cyclotomic, gwr, rank2, restrict, tensor, validate

NODE_BUDGET = 10**7
ENUM_BOUND = 12


# -- colored Cayley graph -----------------------------------------------------


@dataclass(frozen=True)
class ColoredCayley:
    n: int
    matrix: np.ndarray = field(compare=False, repr=False)

    @classmethod
    def of(cls, a: SRing) -> "ColoredCayley":
        n = a.n
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        return cls(n, np.asarray(a.class_of, dtype=np.int64)[idx])

    def color(self, x: int, y: int) -> int:
        return int(self.matrix[x % self.n, y % self.n])

    def is_automorphism(self, f) -> bool:
        f = np.asarray(f)
        return bool((self.matrix[np.ix_(f, f)] == self.matrix).all())


class _Search:
    """Individualization-refinement search for color-preserving bijections."""

    def __init__(self, graph: ColoredCayley, budget: int):
        self.g = graph
        self.n = graph.n
        self.budget = budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"more than {self.budget} search nodes at n = {self.n}")

    def refine(self, cs: np.ndarray, ct: np.ndarray):
        """Refine source and target colorings in lockstep; None on mismatch."""
        M = self.g.matrix
        n = self.n
        while True:
            ncells = len(np.unique(cs))
            ks = np.sort(M * n + cs[None, :], axis=1)
            kt = np.sort(M * n + ct[None, :], axis=1)
            sig_s = [(int(cs[v]), ks[v].tobytes()) for v in range(n)]
            sig_t = [(int(ct[v]), kt[v].tobytes()) for v in range(n)]
            if sorted(sig_s) != sorted(sig_t):
                return None
            ids = {k: i for i, k in enumerate(sorted(set(sig_s)))}
            cs = np.array([ids[k] for k in sig_s], dtype=np.int64)
            ct = np.array([ids[k] for k in sig_t], dtype=np.int64)
            if len(ids) == ncells:
                return cs, ct

    def search(self, cs, ct, find_all: bool) -> Iterator[np.ndarray]:
        self._tick()
        res = self.refine(cs, ct)
        if res is None:
            return
        cs, ct = res
        n = self.n
        counts = np.bincount(cs, minlength=n)
        big = np.nonzero(counts > 1)[0]
        if len(big) == 0:
            f = np.empty(n, dtype=np.int64)
            f[np.argsort(cs)] = np.argsort(ct)
            if self.g.is_automorphism(f):
                yield f
            return
        cell = big[0]
        v = int(np.nonzero(cs == cell)[0][0])
        fresh = int(cs.max()) + 1
        for w in np.nonzero(ct == cell)[0]:
            cs2 = cs.copy()
            ct2 = ct.copy()
            cs2[v] = fresh
            ct2[int(w)] = fresh
            for f in self.search(cs2, ct2, find_all):
                yield f
                if not find_all:
                    return


def _pinned(n: int, pairs) -> tuple[np.ndarray, np.ndarray]:
    cs = np.zeros(n, dtype=np.int64)
    ct = np.zeros(n, dtype=np.int64)
    for i, (x, y) in enumerate(pairs):
        cs[x] = i + 1
        ct[y] = i + 1
    return cs, ct


def find_automorphism(a: SRing, pairs, budget: int = NODE_BUDGET):
    """Some automorphism f with f(x) = y for all given (x, y), or None."""
    s = _Search(ColoredCayley.of(a), budget)
    cs, ct = _pinned(a.n, pairs)
    return next(s.search(cs, ct, False), None)


@lru_cache(maxsize=None)
def aut_stabilizer_orbits(a: SRing, budget: int = NODE_BUDGET) -> tuple[tuple[int, ...], ...]:
    """Orbits of the stabilizer of 0 in the automorphism group of the colored
    Cayley graph, in canonical order."""
    n = a.n
    graph = ColoredCayley.of(a)
    search = _Search(graph, budget)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def absorb(f):
        for x in range(n):
            rx, ry = find(x), find(int(f[x]))
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

    # orbits refine blocks, so only pairs inside a block need a search
    for b in a.blocks:
        for i, x in enumerate(b):
            reps = {find(r) for r in b[:i]}
            for r in sorted(reps):
                if find(x) == find(r):
                    break
                cs, ct = _pinned(n, [(0, 0), (r, x)])
                f = next(search.search(cs, ct, False), None)
                if f is not None:
                    absorb(f)
                    break
    orbits: dict[int, list[int]] = {}
    for x in range(n):
        orbits.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(o) for o in orbits.values()))


def automorphism_count(a: SRing, budget: int = NODE_BUDGET) -> int:
    """|aut| by enumerating every color-preserving permutation."""
    s = _Search(ColoredCayley.of(a), budget)
    cs, ct = _pinned(a.n, [])
    return sum(1 for _ in s.search(cs, ct, True))


def oracle_sch(a: SRing, budget: int = NODE_BUDGET) -> SRing:
    return validate(a.n, aut_stabilizer_orbits(a, budget))


def oracle_is_schurian(a: SRing, budget: int = NODE_BUDGET) -> bool:
    return oracle_sch(a, budget) == a


# -- censuses -------------------------------------------------------------------


@dataclass
class Census:
    n: int
    rings: list[SRing]
    provenance: dict[SRing, str]

    def __len__(self) -> int:
        return len(self.rings)

    def __iter__(self):
        return iter(self.rings)

    def to_jsonl(self) -> str:
        lines = []
        for r in self.rings:
            lines.append(json.dumps({"n": r.n, "blocks": [list(b) for b in r.blocks],
                                     "provenance": self.provenance.get(r, "")}, separators=(",", ":")))
        return "\n".join(lines) + ("\n" if lines else "")


def _canonical_order(rings) -> list[SRing]:
    return sorted(rings, key=lambda r: (r.rank, r.blocks))


def _negation_invariant_partitions(n: int) -> Iterator[list[list[int]]]:
    """Partitions of Z_n with {0} a block that are mapped to themselves by x -> -x."""
    if n == 1:
        yield [[0]]
        return
    blocks: list[list[int]] = []
    neg: list[int] = []  # partner block index
    order = [x for x in range(1, n) if x <= (-x) % n]

    def rec(pos):
        if pos == len(order):
            yield [[0]] + [list(b) for b in blocks]
            return
        x = order[pos]
        y = (-x) % n
        # join an existing block
        for i in range(len(blocks)):
            j = neg[i]
            if x == y and i != j:
                continue
            blocks[i].append(x)
            if x != y:
                blocks[j].append(y)
            yield from rec(pos + 1)
            blocks[i].pop()
            if x != y:
                blocks[j].pop()
        # open a self-paired block
        blocks.append([x] if x == y else [x, y])
        neg.append(len(blocks) - 1)
        yield from rec(pos + 1)
        blocks.pop()
        neg.pop()
        # open a pair of blocks swapped by negation
        if x != y:
            k = len(blocks)
            blocks.extend([[x], [y]])
            neg.extend([k + 1, k])
            yield from rec(pos + 1)
            del blocks[k:]
            del neg[k:]

    yield from rec(0)


def enumerate_exhaustive(n: int, bound: int = ENUM_BOUND) -> Census:
    if n > bound:
        raise BoundExceeded(f"exhaustive enumeration is limited to n <= {bound}")
    rings = set()
    for parts in _negation_invariant_partitions(n):
        try:
            rings.add(validate(n, parts))
        except SRingError:
            pass
    out = _canonical_order(rings)
    return Census(n, out, {r: "exhaustive" for r in out})


def unit_subgroups(n: int) -> list[frozenset[int]]:
    us = units(n)
    subs = {subgroup_closure([], n)}
    frontier = list(subs)
    while frontier:
        nxt = []
        for h in frontier:
            for g in us:
                if g not in h:
                    k = subgroup_closure(list(h) + [g], n)
                    if k not in subs:
                        subs.add(k)
                        nxt.append(k)
        frontier = nxt
    return sorted(subs, key=lambda h: (len(h), sorted(h)))


@lru_cache(maxsize=None)
def _leung_man(n: int) -> tuple[tuple[SRing, str], ...]:
    found: dict[SRing, str] = {}

    def add(r: SRing, how: str):
        if r not in found:
            found[r] = how

    for h in unit_subgroups(n):
        add(cyclotomic(n, sorted(h)), f"cyclotomic{sorted(h)}")
    add(rank2(n), "rank2")
    # tensor products over coprime factorizations
    for n1 in divisors(n):
        n2 = n // n1
        if 1 < n1 < n2 and _coprime(n1, n2):
            for (i1, (r1, _)), (i2, (r2, _)) in product(enumerate(_leung_man(n1)), enumerate(_leung_man(n2))):
                add(tensor(r1, r2), f"tensor(Z{n1}#{i1},Z{n2}#{i2})")
    # proper generalized wreath products from smaller censuses
    for u in divisors(n):
        if u == n:
            continue
        for l in divisors(u):
            if l == 1:
                continue
            inner = Section(u, l, u)
            outer = Section(n // l, 1, u // l)
            left: dict[SRing, list] = {}
            for i1, (r1, _) in enumerate(_leung_man(u)):
                if r1.is_section(inner):
                    left.setdefault(restrict(r1, inner), []).append((i1, r1))
            for i2, (r2, _) in enumerate(_leung_man(n // l)):
                if not r2.is_section(outer):
                    continue
                for i1, r1 in left.get(restrict(r2, outer), []):
                    add(gwr(r1, r2, Section(n, l, u)), f"gwr({l},{u};Z{u}#{i1},Z{n // l}#{i2})")
    return tuple((r, found[r]) for r in _canonical_order(found))


def _coprime(a: int, b: int) -> bool:
    from math import gcd

    return gcd(a, b) == 1


def enumerate_leung_man(n: int) -> Census:
    items = _leung_man(n)
    return Census(n, [r for r, _ in items], dict(items))
