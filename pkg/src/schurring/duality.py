"""The dual S-ring on the character group, identified with Z_n via
a -> chi_a, chi_a(g) = zeta^(a g).

Character sums are compared exactly as elements of Z[zeta_n]: the
coefficient vector of sum_x zeta^(a x) is reduced modulo the n-th
cyclotomic polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import cyclo_reduce
from .errors import InternalAxiomFailure, SRingError
from .lattice import Section, dual_section, dual_subgroup  # noqa: F401
from .ring import SRing, validate

__all__ = ["DualMap", "dual", "dual_map", "dual_section", "dual_subgroup", "dual_class"]


@dataclass(frozen=True)
class DualMap:
    source: SRing
    target: SRing
    group_map: tuple[tuple[int, int], ...]  # A-group order d -> annihilator order n/d


def _character_key(a: SRing, c: int) -> tuple:
    n = a.n
    key = []
    for b in a.blocks:
        coeffs = [0] * n
        for x in b:
            coeffs[c * x % n] += 1
        key.append(cyclo_reduce(n, coeffs))
    return tuple(key)


@lru_cache(maxsize=None)
def dual(a: SRing) -> SRing:
    n = a.n
    groups: dict[tuple, list[int]] = {}
    for c in range(n):
        groups.setdefault(_character_key(a, c), []).append(c)
    try:
        return validate(n, groups.values())
    except SRingError as exc:
        raise InternalAxiomFailure(f"character classes of {a} do not form an S-ring: {exc}") from exc


def dual_map(a: SRing) -> DualMap:
    b = dual(a)
    pairs = tuple((d, dual_subgroup(a.n, d)) for d in a.a_groups())
    for _, e in pairs:
        if not b.is_agroup(e):
            raise InternalAxiomFailure(f"annihilator of order {e} is not a group of the dual ring")
    return DualMap(a, b, pairs)


def dual_class(members) -> list[Section]:
    return [dual_section(s) for s in members]
