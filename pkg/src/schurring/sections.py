"""Section calculus relative to an S-ring: radicals, principal and
quasisubprincipal sections, quasidensity, coset and wreath structure, and
the Sylow-hat operator on admissible classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .arith import is_composite
from .errors import NotAdmissible
from .lattice import (
    Section,
    is_quasisubsection,
    is_subsection,
    projective_class_map,
    smallest_and_largest,
    sylows,
)
from .ring import SRing, restrict


@dataclass(frozen=True)
class SectionClass:
    members: tuple[Section, ...]
    smallest: Section | None
    largest: Section | None

    @property
    def order(self) -> int:
        return self.members[0].order

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "members": [s.as_list() for s in self.members],
            "smallest": self.smallest.as_list() if self.smallest else None,
            "largest": self.largest.as_list() if self.largest else None,
        }


@dataclass(frozen=True)
class SectionInfo:
    section: Section
    principal: bool
    subprincipal: bool
    quasisubprincipal: bool
    trivial_radical: bool
    cyclotomic: bool


def radical_and_span(a: SRing, block: Sequence[int]) -> tuple[int, int]:
    """Orders of rad(X) = {g : g + X = X} and of <X>."""
    n = a.n
    xs = set(block)
    rad = 1
    for d in range(n, 0, -1):
        if n % d == 0 and all((x + n // d) % n in xs for x in xs):
            rad = d
            break
    g = n
    for x in block:
        g = _gcd(g, x)
    return rad, n // g


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def ring_radical(a: SRing) -> int:
    """Order of the radical of a highest basic set (the one containing 1)."""
    if a.n == 1:
        return 1
    return radical_and_span(a, a.block_of(1))[0]


@lru_cache(maxsize=None)
def principal_sections(a: SRing) -> frozenset[Section]:
    out = set()
    for b in a.blocks:
        r, s = radical_and_span(a, b)
        out.add(Section(a.n, r, s))
    return frozenset(out)


def projective_classes(n: int, sections: Iterable[Section]) -> list[SectionClass]:
    """Partition given sections into projective-equivalence classes.

    Equivalence is computed over all sections of Z_n, then intersected
    with the given list.
    """
    cmap = projective_class_map(n)
    groups: dict[int, list[Section]] = {}
    for s in sections:
        groups.setdefault(cmap[s], []).append(s)
    out = []
    for members in groups.values():
        members = sorted(set(members), key=lambda s: (s.u, s.l))
        small, large = smallest_and_largest(members)
        out.append(SectionClass(tuple(members), small, large))
    out.sort(key=lambda c: (c.members[0].u, c.members[0].l))
    return out


@lru_cache(maxsize=None)
def a_section_info(a: SRing) -> tuple[SectionInfo, ...]:
    from .multipliers import is_cyclotomic

    secs = a.a_sections()
    prin = principal_sections(a)
    sub = {s for s in secs if any(is_subsection(s, p) for p in prin)}
    cmap = projective_class_map(a.n)
    sub_classes = {cmap[s] for s in sub}
    out = []
    for s in secs:
        out.append(
            SectionInfo(
                section=s,
                principal=s in prin,
                subprincipal=s in sub,
                quasisubprincipal=cmap[s] in sub_classes,
                trivial_radical=ring_radical(restrict(a, s)) == 1,
                cyclotomic=is_cyclotomic(a, s),
            )
        )
    return tuple(out)


def quasisubprincipal_sections(a: SRing) -> list[Section]:
    return [i.section for i in a_section_info(a) if i.quasisubprincipal]


@lru_cache(maxsize=None)
def is_quasidense(a: SRing) -> bool:
    """No A-section of composite order restricts to a rank-2 ring."""
    for s in a.a_sections():
        if is_composite(s.order) and restrict(a, s).rank == 2:
            return False
    return True


def is_dense(a: SRing) -> bool:
    return all(a.is_agroup(d) for d in range(1, a.n + 1) if a.n % d == 0)


def is_coset_ring(a: SRing) -> bool:
    """Every block X satisfies X = x + rad(X)."""
    return all(radical_and_span(a, b)[0] == len(b) for b in a.blocks)


def is_wreath_section(a: SRing, s: Section) -> bool:
    """Whether A is the s-wreath product: L <= rad(X) for blocks X outside U."""
    if not a.is_section(s):
        return False
    step_u = a.n // s.u
    shift = a.n // s.l
    for b in a.blocks:
        if b[0] % step_u:
            xs = set(b)
            if any((x + shift) % a.n not in xs for x in b):
                return False
    return True


def gwr_sections(a: SRing) -> list[tuple[Section, bool]]:
    """All wreath sections of A with a flag telling whether the product is proper."""
    return [
        (s, s.l > 1 and s.u < a.n)
        for s in a.a_sections()
        if is_wreath_section(a, s)
    ]


def check_admissible(a: SRing, frs: Iterable[Section], require_cyclotomic: bool = True) -> frozenset[Section]:
    from .multipliers import is_cyclotomic

    frs = frozenset(frs)
    secs = a.a_sections()
    for s in frs:
        if not a.is_section(s):
            raise NotAdmissible(f"{s.as_list()} is not an A-section")
    missing = principal_sections(a) - frs
    if missing:
        raise NotAdmissible(f"principal sections {sorted(m.as_list() for m in missing)} are missing")
    if require_cyclotomic:
        for s in frs:
            if not is_cyclotomic(a, s):
                raise NotAdmissible(f"section {s.as_list()} is not cyclotomic")
    for s in frs:
        for t in secs:
            if t not in frs and is_quasisubsection(t, s):
                raise NotAdmissible(
                    f"{t.as_list()} is a quasisubsection of {s.as_list()} but not in the class"
                )
    return frs


def sigma_hat(a: SRing, frs: Iterable[Section], require_cyclotomic: bool = True) -> list[Section]:
    """A-sections all of whose Sylow subsections lie in the admissible class."""
    frs = check_admissible(a, frs, require_cyclotomic)
    return [s for s in a.a_sections() if all(p in frs for p in sylows(s))]


@lru_cache(maxsize=None)
def s_zero(a: SRing) -> tuple[Section, ...]:
    """Sylow-hat of the quasisubprincipal class (cyclotomicity not required)."""
    return tuple(sigma_hat(a, quasisubprincipal_sections(a), require_cyclotomic=False))
