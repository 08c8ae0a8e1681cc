"""Coset closure, schurian closure and the reduction of singular classes.

The coset closure is computed twice: as the meet of the admissible
elementary coset rings, and blockwise from the subgroups L(X).  The
schurian closure merges coset-closure blocks along the multiplier action.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .arith import is_composite
from .errors import (
    AlgorithmDisagreement,
    ConstructionAmbiguous,
    InternalAxiomFailure,
    InvariantViolation,
    NotQuasidense,
    NotSingular,
)
from .lattice import Section, all_sections, is_multiple, sylows
from .multipliers import multiplier_group
from .ring import (
    SRing,
    closure_of_partition,
    elementary_coset,
    group_ring,
    gwr,
    leq,
    meet_all,
    quotient,
    restrict,
    subring,
    tensor,
    validate,
)
from .sections import (
    SectionClass,
    is_quasidense,
    is_wreath_section,
    projective_classes,
    radical_and_span,
    s_zero,
    sigma_hat,
)


@dataclass(frozen=True)
class ClosureResult:
    input: SRing
    closure: SRing
    witnesses: tuple[Section, ...]
    l_map: dict = field(hash=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "input": self.input.to_dict(),
            "closure": self.closure.to_dict(),
            "witnesses": [w.as_list() for w in self.witnesses],
            "l_map": [[list(b), d] for b, d in self.l_map.items()],
        }


def _hat(a: SRing, frs) -> frozenset[Section]:
    if frs is None:
        return frozenset(s_zero(a))
    return frozenset(sigma_hat(a, frs, require_cyclotomic=False))


def _is_group_ring(r: SRing) -> bool:
    return r.rank == r.n


def _algorithm_meet(a: SRing, frs: frozenset[Section]) -> tuple[SRing, list[Section]]:
    n = a.n
    witnesses = []
    rings = []
    for t in all_sections(n):
        z = elementary_coset(n, t)
        if leq(a, z) and all(_is_group_ring(restrict(z, s)) for s in frs):
            witnesses.append(t)
            rings.append(z)
    return meet_all(rings), witnesses


def _algorithm_blocks(a: SRing, hat: frozenset[Section]) -> tuple[SRing, dict]:
    n = a.n
    l_map = {}
    parts = []
    for b in a.blocks:
        rad, span = radical_and_span(a, b)
        g = 0
        for s in hat:
            if s.u == span and rad % s.l == 0:
                g = gcd(g, s.l)
        if g == 0:
            raise InternalAxiomFailure(f"no admissible section below the principal one of {list(b)}")
        l_map[b] = g
        step = n // g
        seen = set()
        for x in b:
            if x not in seen:
                coset = {(x + k * step) % n for k in range(g)}
                seen |= coset
                parts.append(sorted(coset))
    return validate(n, parts), l_map


def coset_closure(a: SRing, frs: Iterable[Section] | None = None) -> ClosureResult:
    """Smallest coset S-ring containing A whose restriction to every section
    of the admissible class is the group ring (default class: s_zero(A))."""
    if not is_quasidense(a):
        raise NotQuasidense("coset closure is only defined here for quasidense rings")
    hat = _hat(a, frs)
    base = hat if frs is None else frozenset(frs)
    first, witnesses = _algorithm_meet(a, base)
    second, l_map = _algorithm_blocks(a, hat)
    if first != second:
        raise AlgorithmDisagreement(f"meet gives {first}, blockwise gives {second}")
    return ClosureResult(a, first, tuple(witnesses), l_map)


# -- schurian closure ---------------------------------------------------------


def _multiplier_value(values: dict[Section, int], s: Section) -> int:
    if s in values:
        return values[s]
    # assemble from Sylow components by CRT
    from .arith import crt

    parts = sylows(s)
    if not all(p in values for p in parts):
        raise InternalAxiomFailure(f"no multiplier coordinate for section {s.as_list()}")
    return crt([values[p] for p in parts], [p.order for p in parts]) if parts else 0


def schurian_closure(a: SRing) -> SRing:
    if not is_quasidense(a):
        raise NotQuasidense("schurian closure via multipliers needs a quasidense ring")
    a0 = coset_closure(a).closure
    group = multiplier_group(a, check_cyclotomic=False)
    n = a.n
    block_index = {b: i for i, b in enumerate(a0.blocks)}
    parent = list(range(a0.rank))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for mult in group.generators:
        values = mult.as_dict()
        for i, y_block in enumerate(a0.blocks):
            rad, span = radical_and_span(a0, y_block)
            s = Section(n, rad, span)
            x = _multiplier_value(values, s)
            y = y_block[0]
            image = (x * s.project(y)) % s.order * (n // span)
            target = a0.block_of(image)
            if len(target) != len(y_block) or any((image + k * (n // rad)) % n not in target for k in range(rad)):
                raise InternalAxiomFailure(f"multiplier does not map {list(y_block)} onto a block")
            j = block_index[target]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    groups: dict[int, list[int]] = {}
    for i, b in enumerate(a0.blocks):
        groups.setdefault(find(i), []).extend(b)
    out = validate(n, groups.values())
    if not leq(a, out):
        raise InternalAxiomFailure("schurian closure does not contain the ring")
    return out


# -- singular classes and E(A, C) ---------------------------------------------


def singular_classes(a: SRing) -> list[SectionClass]:
    out = []
    for c in projective_classes(a.n, a.a_sections()):
        if c.order <= 2 or restrict(a, c.members[0]).rank != 2:
            continue
        s, t = c.smallest, c.largest
        if s is None or t is None or not is_multiple(t, s):
            continue
        if _singular_conditions(a, s, t):
            out.append(c)
    return out


def _singular_conditions(a: SRing, s: Section, t: Section) -> bool:
    n = a.n
    l0, l1, u0, u1 = s.l, s.u, t.l, t.u
    if not (is_wreath_section(a, Section(n, l0, u0)) and is_wreath_section(a, Section(n, l1, u1))):
        return False
    whole = restrict(a, Section(n, l0, u1))
    return whole == tensor(restrict(a, Section(n, l0, l1)), restrict(a, Section(n, l0, u0)))


def s_extension(a: SRing, c: SectionClass) -> SRing:
    """The extension in which the rank-2 class c becomes a group-ring class."""
    if c.smallest is None or c.largest is None or not any(c.members == d.members for d in singular_classes(a)):
        raise NotSingular("the class is not a singular class of the ring")
    n = a.n
    l0, l1, u0, u1 = c.smallest.l, c.smallest.u, c.largest.l, c.largest.u
    inner = tensor(group_ring(l1 // l0), restrict(a, Section(n, l0, u0)))
    b_u1 = gwr(subring(a, u0), inner, Section(u1, l0, u0))
    b = gwr(b_u1, quotient(a, l1), Section(n, l1, u1))
    # sanity: the defining properties and the rank growth
    ok = (
        is_wreath_section(b, Section(n, l0, u0))
        and is_wreath_section(b, Section(n, l1, u1))
        and restrict(b, Section(n, l0, u1)) == tensor(group_ring(l1 // l0), restrict(a, Section(n, l0, u0)))
        and subring(b, u0) == subring(a, u0)
        and quotient(b, l1) == quotient(a, l1)
        and leq(a, b)
        and b.rank > a.rank
    )
    if not ok:
        raise ConstructionAmbiguous(f"extension of {a} along {c.smallest.as_list()} fails its defining checks")
    return b


def is_extension_of(b: SRing, a: SRing, c: SectionClass) -> bool:
    """Whether b has the defining properties of E(A, C); used for uniqueness scans."""
    n = a.n
    if b.n != n:
        return False
    l0, l1, u0, u1 = c.smallest.l, c.smallest.u, c.largest.l, c.largest.u
    need = [Section(n, l0, u0), Section(n, l1, u1), Section(n, l0, u1)]
    if not all(b.is_section(s) for s in need) or not b.is_agroup(l1) or not b.is_agroup(u0):
        return False
    return (
        is_wreath_section(b, need[0])
        and is_wreath_section(b, need[1])
        and restrict(b, need[2]) == tensor(group_ring(l1 // l0), restrict(a, need[0]))
        and subring(b, u0) == subring(a, u0)
        and quotient(b, l1) == quotient(a, l1)
    )


def reduce_to_quasidense(a: SRing) -> tuple[SRing, list[tuple[SectionClass, SRing]]]:
    """Extend along composite-order singular classes until quasidense."""
    steps = []
    cur = a
    while True:
        comp = [c for c in singular_classes(cur) if is_composite(c.order)]
        if not comp:
            break
        cur = s_extension(cur, comp[0])
        steps.append((comp[0], cur))
        if len(steps) > a.n:
            raise InvariantViolation("reduction did not terminate within n steps")
    if not is_quasidense(cur):
        raise InvariantViolation(f"reduction stopped at a ring that is not quasidense: {cur}")
    return cur, steps


def refinement_closure(a: SRing, c: SectionClass) -> SRing:
    """Smallest S-ring containing A that splits L1 into L0-cosets (data only)."""
    n = a.n
    l0, l1 = c.smallest.l, c.smallest.u
    step1, step0 = n // l1, n // l0
    parts = []
    for b in a.blocks:
        if b[0] % step1 == 0:
            pieces: dict[int, list[int]] = {}
            for x in b:
                pieces.setdefault(x % step0, []).append(x)
            parts.extend(pieces.values())
        else:
            parts.append(list(b))
    return closure_of_partition(n, parts)


def plain_coset_closure(a: SRing) -> SRing:
    """Meet of every elementary coset ring containing A, with no side condition."""
    n = a.n
    return meet_all(z for z in (elementary_coset(n, t) for t in all_sections(n)) if leq(a, z))


def s_zero_from_closure(a: SRing) -> list[Section]:
    """Sections of the plain coset closure on which it restricts to the group ring."""
    a0 = plain_coset_closure(a)
    return [s for s in a0.a_sections() if _is_group_ring(restrict(a0, s))]
