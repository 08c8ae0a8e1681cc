"""Sections of Z_n as divisor pairs, and the lattice calculus on them.

The subgroup of Z_n of order d is <n/d>; a section U/L is stored as the
pair of orders (l, u) with l | u | n.  Nothing here depends on an S-ring.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, NamedTuple

from .arith import divisors, factorize, lcm, p_part
from .errors import NotADivisor, SectionNotNested


class Section(NamedTuple):
    n: int
    l: int
    u: int

    @property
    def order(self) -> int:
        return self.u // self.l

    @property
    def is_trivial(self) -> bool:
        return self.l == self.u

    def contains(self, g: int) -> bool:
        """Whether g lies in the numerator subgroup U."""
        return g % (self.n // self.u) == 0

    def project(self, g: int) -> int:
        """Canonical quotient map U -> Z_m, g -> (g / (n/u)) mod m."""
        return (g // (self.n // self.u)) % self.order

    def check(self) -> "Section":
        n, l, u = self
        if n < 1 or u < 1 or l < 1 or n % u or u % l:
            raise SectionNotNested(f"({l}, {u}) is not a section of Z_{n}")
        return self

    def as_list(self) -> list[int]:
        return [self.l, self.u]

    def __repr__(self) -> str:
        return f"Section(n={self.n}, l={self.l}, u={self.u})"


def section(n: int, l: int, u: int) -> Section:
    return Section(n, l, u).check()


def all_sections(n: int) -> list[Section]:
    out = []
    for u in divisors(n):
        for l in divisors(u):
            out.append(Section(n, l, u))
    return out


def is_subsection(t: Section, s: Section) -> bool:
    """t <= s: t.U <= s.U and t.L >= s.L."""
    return s.u % t.u == 0 and t.l % s.l == 0


def is_multiple(t: Section, s: Section) -> bool:
    """Whether t is a multiple of s: s.L = s.U & t.L and t.U = s.U + t.L."""
    return s.l == gcd(s.u, t.l) and t.u == lcm(s.u, t.l)


def rho(t: Section, s: Section) -> Section:
    """Image of t in s: ((U & H) + K) / ((L & H) + K) for s = H/K."""
    return Section(t.n, lcm(gcd(t.l, s.u), s.l), lcm(gcd(t.u, s.u), s.l))


def to_local(t: Section, s: Section) -> Section:
    """Express a subsection t of s in the coordinates of Z_{|s|}."""
    if not is_subsection(t, s):
        raise SectionNotNested(f"{t} is not a subsection of {s}")
    return Section(s.order, t.l // s.l, t.u // s.l)


def from_local(t: Section, s: Section) -> Section:
    """Inverse of ``to_local``: a section of Z_{|s|} lifted into s."""
    return Section(s.n, t.l * s.l, t.u * s.l)


def sylow(s: Section, p: int) -> Section:
    """The Sylow p-subsection of s, lifted to G: (l, l * p^v_p(m))."""
    return Section(s.n, s.l, s.l * p_part(s.order, p))


def sylows(s: Section) -> list[Section]:
    return [sylow(s, p) for p in sorted(factorize(s.order))]


def dual_subgroup(n: int, d: int) -> int:
    """Order of the annihilator of the order-d subgroup under a -> chi_a."""
    if d < 1 or n % d:
        raise NotADivisor(f"{d} does not divide {n}")
    return n // d


def dual_section(s: Section) -> Section:
    return Section(s.n, dual_subgroup(s.n, s.u), dual_subgroup(s.n, s.l))


@lru_cache(maxsize=None)
def projective_class_map(n: int) -> dict[Section, int]:
    """Projective-equivalence class index of every section of Z_n.

    Transitive closure of the multiple relation over all divisor pairs.
    """
    secs = all_sections(n)
    parent = {s: s for s in secs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in secs:
        for t in secs:
            if is_multiple(t, s):
                a, b = find(s), find(t)
                if a != b:
                    parent[a] = b
    roots: dict[Section, int] = {}
    out = {}
    for s in secs:
        r = find(s)
        out[s] = roots.setdefault(r, len(roots))
    return out


def equivalent(s: Section, t: Section) -> bool:
    cmap = projective_class_map(s.n)
    return cmap[s] == cmap[t]


@lru_cache(maxsize=None)
def _class_members(n: int) -> dict[int, tuple[Section, ...]]:
    out: dict[int, list[Section]] = {}
    for s, c in projective_class_map(n).items():
        out.setdefault(c, []).append(s)
    return {c: tuple(v) for c, v in out.items()}


def class_of(s: Section) -> tuple[Section, ...]:
    """All sections of Z_n projectively equivalent to s."""
    return _class_members(s.n)[projective_class_map(s.n)[s]]


@lru_cache(maxsize=None)
def is_quasisubsection(t: Section, s: Section) -> bool:
    """Whether t is equivalent to some subsection of s."""
    return any(is_subsection(t2, s) for t2 in class_of(t))


def smallest_and_largest(members: Iterable[Section]) -> tuple[Section | None, Section | None]:
    """Members every other member is a multiple of / that is a multiple of all."""
    members = list(members)
    small = next((s for s in members if all(is_multiple(t, s) for t in members)), None)
    large = next((s for s in members if all(is_multiple(s, t) for t in members)), None)
    return small, large
