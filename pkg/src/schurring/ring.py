"""Circulant S-rings: the validated partition type, its lattice operations and
all constructors.

Elements of Z_n are residues 0..n-1 and an S-ring is stored by its basic sets
(blocks) in canonical order: elements ascending, blocks by minimum element.
Two S-rings are equal iff their canonical block lists are equal.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .arith import divisors, subgroup_closure
from .errors import (
    InternalAxiomFailure,
    MissingIdentityBlock,
    ModulusMismatch,
    NonUnitMultiplier,
    NotAPartition,
    NotASection,
    NotCoprime,
    NotInverseClosed,
    NotModuleClosed,
    RestrictionMismatch,
)
from .lattice import Section, section


@dataclass(frozen=True)
class SRing:
    n: int
    blocks: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...] = field(compare=False, repr=False)

    @property
    def rank(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> tuple[int, ...]:
        return self.blocks[self.class_of[x % self.n]]

    def is_aset(self, elements: Iterable[int]) -> bool:
        elements = {e % self.n for e in elements}
        return all(set(self.block_of(e)) <= elements for e in elements)

    def is_agroup(self, d: int) -> bool:
        """Whether the subgroup of order d is a union of blocks."""
        if self.n % d:
            return False
        step = self.n // d
        return all(x % step == 0 for g in range(0, self.n, step) for x in self.block_of(g))

    def a_groups(self) -> list[int]:
        return [d for d in divisors(self.n) if self.is_agroup(d)]

    def is_section(self, s: Section) -> bool:
        return s.n == self.n and self.is_agroup(s.l) and self.is_agroup(s.u)

    def a_sections(self) -> list[Section]:
        groups = self.a_groups()
        return [Section(self.n, l, u) for u in groups for l in groups if u % l == 0]

    def to_dict(self) -> dict:
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "SRing":
        return validate(int(data["n"]), data["blocks"])

    @classmethod
    def from_json(cls, text: str) -> "SRing":
        return cls.from_dict(json.loads(text))

    def __str__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)
        return f"SRing(Z_{self.n}: {inner})"


# -- construction and validation -------------------------------------------


def _canonical(n: int, partition: Iterable[Iterable[int]]) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    blocks = sorted(tuple(sorted(b)) for b in partition)
    class_of = [0] * n
    for i, b in enumerate(blocks):
        for x in b:
            class_of[x] = i
    return tuple(blocks), tuple(class_of)


def _partition_from_keys(n: int, keys: Sequence) -> list[list[int]]:
    groups: dict = {}
    for x in range(n):
        groups.setdefault(keys[x], []).append(x)
    return list(groups.values())


def convolution_counts(n: int, blocks, class_of) -> np.ndarray:
    """counts[X, Y, g] = #{(x, y) in X x Y : x + y = g}."""
    r = len(blocks)
    ind = np.zeros((r, n), dtype=np.int64)
    ind[np.asarray(class_of), np.arange(n)] = 1
    out = np.zeros((r, r, n), dtype=np.int64)
    for i, X in enumerate(blocks):
        acc = out[i]
        for x in X:
            acc += np.roll(ind, x, axis=1)
    return out


def validate(n: int, partition: Iterable[Iterable[int]]) -> SRing:
    """Check the S-ring axioms and return the canonical ring."""
    if n < 1:
        raise NotAPartition(f"modulus must be positive, got {n}")
    parts = [list(b) for b in partition]
    seen: set[int] = set()
    for b in parts:
        if not b:
            raise NotAPartition("empty block")
        for x in b:
            if not isinstance(x, (int, np.integer)) or not 0 <= x < n:
                raise NotAPartition(f"element {x!r} is not a residue mod {n}")
            if x in seen:
                raise NotAPartition(f"element {x} occurs twice")
            seen.add(int(x))
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise NotAPartition(f"elements {missing} are not covered")
    blocks, class_of = _canonical(n, ([int(x) for x in b] for b in parts))
    if blocks[0] != (0,):
        raise MissingIdentityBlock(f"{{0}} is not a block: {list(blocks[0])}")
    block_set = set(blocks)
    for b in blocks:
        neg = tuple(sorted((-x) % n for x in b))
        if neg not in block_set:
            raise NotInverseClosed(f"-{list(b)} = {list(neg)} is not a block")
    counts = convolution_counts(n, blocks, class_of)
    reps = np.array([blocks[c][0] for c in class_of])
    bad = counts != counts[:, :, reps]
    if bad.any():
        i, j, g = map(int, np.argwhere(bad)[0])
        k = class_of[g]
        raise NotModuleClosed(
            f"{list(blocks[i])}*{list(blocks[j])} is not constant on {list(blocks[k])}",
            triple=(blocks[i], blocks[j], blocks[k]),
        )
    return SRing(n, blocks, class_of)


def _from_keys(n: int, keys: Sequence) -> SRing:
    return validate(n, _partition_from_keys(n, keys))


def group_ring(n: int) -> SRing:
    return _from_keys(n, list(range(n)))


def rank2(n: int) -> SRing:
    return _from_keys(n, [min(x, 1) for x in range(n)])


def cyclotomic(n: int, K: Iterable[int]) -> SRing:
    """Orbits of the multiplicative group generated by K on Z_n."""
    K = [k % n for k in K] if n > 1 else [0]
    if n > 1:
        for k in K:
            if gcd(k, n) != 1:
                raise NonUnitMultiplier(f"{k} is not a unit mod {n}")
    group = subgroup_closure(K, n) if n > 1 else frozenset({0})
    keys = [min(k * x % n for k in group) if n > 1 else 0 for x in range(n)]
    return _from_keys(n, keys)


def tensor(a1: SRing, a2: SRing) -> SRing:
    """Tensor product over Z_{n1 n2} via x -> (x mod n1, x mod n2)."""
    n1, n2 = a1.n, a2.n
    if gcd(n1, n2) != 1:
        raise NotCoprime(f"gcd({n1}, {n2}) != 1")
    n = n1 * n2
    return _from_keys(n, [(a1.class_of[x % n1], a2.class_of[x % n2]) for x in range(n)])


@lru_cache(maxsize=None)
def restrict(a: SRing, s: Section) -> SRing:
    """The S-ring induced on U/L, in the coordinates of Z_{|S|}."""
    if s.n != a.n:
        raise ModulusMismatch(f"section of Z_{s.n} used with ring over Z_{a.n}")
    s.check()
    if not a.is_section(s):
        raise NotASection(f"({s.l}, {s.u}) is not an A-section")
    m = s.order
    images = set()
    step = a.n // s.u
    for b in a.blocks:
        if b[0] % step == 0:
            images.add(frozenset(s.project(x) for x in b))
    return validate(m, images)


def subring(a: SRing, d: int) -> SRing:
    """Restriction to the subgroup of order d."""
    return restrict(a, section(a.n, 1, d))


def quotient(a: SRing, d: int) -> SRing:
    """Restriction to G/L with |L| = d."""
    return restrict(a, section(a.n, d, a.n))


def gwr(a1: SRing, a2: SRing, s: Section) -> SRing:
    """Generalized wreath product of a1 over U and a2 over G/L for s = U/L."""
    s.check()
    n, l, u = s
    if a1.n != u or a2.n * l != n:
        raise ModulusMismatch(f"factors over Z_{a1.n}, Z_{a2.n} do not fit section ({l}, {u}) of Z_{n}")
    inner = Section(u, l, u)
    outer = Section(a2.n, 1, u // l)
    if not a1.is_section(inner) or not a2.is_section(outer):
        raise RestrictionMismatch("U/L is not a section of both factors")
    if restrict(a1, inner) != restrict(a2, outer):
        raise RestrictionMismatch("factors restrict differently to U/L")
    step = n // u
    m2 = a2.n
    keys = [
        ("in", a1.class_of[x // step]) if x % step == 0 else ("out", a2.class_of[x % m2])
        for x in range(n)
    ]
    return _from_keys(n, keys)


def elementary_coset(n: int, t: Section) -> SRing:
    """Z(G, U/L): singletons inside U, L-cosets outside."""
    t = section(n, t[1], t[2]) if not isinstance(t, Section) else t.check()
    step = n // t.u
    m = n // t.l
    return _from_keys(n, [("s", x) if x % step == 0 else ("c", x % m) for x in range(n)])


def leq(a1: SRing, a2: SRing) -> bool:
    """a1 <= a2: every block of a1 is a union of blocks of a2."""
    if a1.n != a2.n:
        raise ModulusMismatch(f"Z_{a1.n} vs Z_{a2.n}")
    return all(len({a1.class_of[x] for x in b}) == 1 for b in a2.blocks)


def meet(a1: SRing, a2: SRing) -> SRing:
    """Intersection: the finest common coarsening of both partitions."""
    if a1.n != a2.n:
        raise ModulusMismatch(f"Z_{a1.n} vs Z_{a2.n}")
    n = a1.n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ring in (a1, a2):
        for b in ring.blocks:
            r = find(b[0])
            for x in b[1:]:
                rx = find(x)
                if rx != r:
                    parent[rx] = r
    try:
        return _from_keys(n, [find(x) for x in range(n)])
    except (NotModuleClosed, NotInverseClosed, MissingIdentityBlock) as exc:
        raise InternalAxiomFailure(f"meet of two S-rings is not an S-ring: {exc}") from exc


def meet_all(rings: Iterable[SRing]) -> SRing:
    out = None
    for r in rings:
        out = r if out is None else meet(out, r)
    if out is None:
        raise ValueError("meet of an empty family")
    return out


def closure_of_partition(n: int, partition: Iterable[Iterable[int]]) -> SRing:
    """Smallest S-ring whose partition refines the given one.

    Iterated refinement by convolution counts and negation until stable.
    """
    keys = [0] * n
    for i, b in enumerate(partition):
        for x in b:
            keys[x] = i + 1
    keys[0] = -1
    class_of = _relabel(keys)
    while True:
        blocks = _blocks_of(class_of)
        counts = convolution_counts(n, blocks, class_of)
        flat = counts.reshape(-1, n).T  # row g: all X*Y counts at g
        new = [(class_of[g], class_of[(-g) % n], flat[g].tobytes()) for g in range(n)]
        new_class = _relabel(new)
        if max(new_class) == max(class_of):
            return validate(n, blocks)
        class_of = new_class


def _relabel(keys: Sequence) -> list[int]:
    ids: dict = {}
    return [ids.setdefault(k, len(ids)) for k in keys]


def _blocks_of(class_of: Sequence[int]) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for x, c in enumerate(class_of):
        out.setdefault(c, []).append(x)
    return list(out.values())
