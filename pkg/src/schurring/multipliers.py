"""Cayley automorphism groups of sections, multipliers and the schurity
criterion for quasidense circulant S-rings.

A multiplier assigns to every section S of the domain (the class s_zero(A))
a unit residue x_S mod |S| fixing all blocks of A_S, such that x_S and x_T
agree mod |T| whenever T is a quasisubsection of S.  Two solvers produce
Mult(A): an exponent-lattice solver using Smith normal form and a plain
constraint-propagation enumerator; they are cross-checked.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .arith import (
    UnitGroupDecomposition,
    abelian_subgroup_order,
    integer_kernel,
    subgroup_closure,
    unit_group,
    units,
)
from .errors import (
    NonCyclotomicSection,
    NotASection,
    NotQuasidense,
    SolverDisagreement,
)
from .lattice import Section, is_quasisubsection, projective_class_map
from .ring import SRing, restrict

BRUTE_BOUND = 10**6


# -- aut_A(S) ---------------------------------------------------------------


@dataclass(frozen=True)
class AutGroup:
    """aut_A(S) as a set of unit residues mod ``modulus``."""

    modulus: int
    elements: frozenset[int]

    @property
    def decomposition(self) -> UnitGroupDecomposition:
        """Decomposition of the ambient unit group (Z/modulus)^*."""
        return unit_group(self.modulus)

    def generators(self) -> tuple[int, ...]:
        return _small_generating_set(self.elements, self.modulus)

    def __contains__(self, k: int) -> bool:
        return k % self.modulus in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.elements))

    def __len__(self) -> int:
        return len(self.elements)


def _small_generating_set(elements: frozenset[int], m: int) -> tuple[int, ...]:
    gens: list[int] = []
    span = subgroup_closure([], m)
    for k in sorted(elements):
        if k not in span:
            gens.append(k)
            span = subgroup_closure(gens, m)
    return tuple(gens)


@lru_cache(maxsize=None)
def aut_A(a: SRing, s: Section) -> AutGroup:
    """Units k mod |S| with k X = X for every block X of A_S."""
    if s.n != a.n or not a.is_section(s):
        raise NotASection(f"{s.as_list()} is not an A-section")
    r = restrict(a, s)
    m = r.n
    cls = r.class_of
    good = frozenset(k for k in units(m) if all(cls[k * x % m] == cls[x] for x in range(m)))
    return AutGroup(m, good)


@lru_cache(maxsize=None)
def is_cyclotomic(a: SRing, s: Section) -> bool:
    """Whether the orbits of aut_A(S) on Z_|S| are exactly the blocks of A_S."""
    grp = aut_A(a, s)
    r = restrict(a, s)
    m = r.n
    for b in r.blocks:
        if {k * b[0] % m for k in grp.elements} != set(b):
            return False
    return True


# -- multiplier types -------------------------------------------------------


@dataclass(frozen=True)
class Multiplier:
    domain: tuple[Section, ...]
    values: tuple[int, ...]

    def __getitem__(self, s: Section) -> int:
        return self.values[self.domain.index(s)]

    def as_dict(self) -> dict[Section, int]:
        return dict(zip(self.domain, self.values))

    def __mul__(self, other: "Multiplier") -> "Multiplier":
        vals = tuple(x * y % s.order for s, x, y in zip(self.domain, self.values, other.values))
        return Multiplier(self.domain, vals)

    def is_identity(self) -> bool:
        return all(x == 1 % s.order for s, x in zip(self.domain, self.values))

    def to_dict(self) -> dict:
        return {"assignment": [[s.l, s.u, x] for s, x in zip(self.domain, self.values)]}


@dataclass(frozen=True)
class MultiplierGroup:
    domain: tuple[Section, ...]
    generators: tuple[Multiplier, ...]
    order: int

    def identity(self) -> Multiplier:
        return Multiplier(self.domain, tuple(1 % s.order for s in self.domain))

    def elements(self, bound: int = BRUTE_BOUND) -> set[Multiplier]:
        """All members, by closing the generators (at most ``bound`` of them)."""
        one = self.identity()
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = x * g
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > bound:
                            raise OverflowError("multiplier group larger than bound")
            frontier = nxt
        return seen

    def image(self, s: Section) -> frozenset[int]:
        """Projection onto the coordinate s (a subgroup of aut_A(s))."""
        i = self.domain.index(s)
        return subgroup_closure([g.values[i] for g in self.generators], s.order)

    def to_dict(self) -> dict:
        return {
            "domain": [s.as_list() for s in self.domain],
            "generators": [g.to_dict()["assignment"] for g in self.generators],
            "order": self.order,
        }


def multiplier_domain(a: SRing) -> tuple[Section, ...]:
    from .sections import s_zero

    return tuple(sorted(s_zero(a), key=lambda s: (-s.order, s.u, s.l)))


def _constraint_pairs(domain) -> list[tuple[int, int]]:
    """(i, j) with domain[j] a quasisubsection of domain[i], i != j."""
    return [
        (i, j)
        for i, s in enumerate(domain)
        for j, t in enumerate(domain)
        if i != j and is_quasisubsection(t, s)
    ]


def is_multiplier(a: SRing, assignment: dict[Section, int]) -> bool:
    """Direct check of the defining conditions on an assignment over s_zero(A).

    Units fixing all blocks; restriction to subsections; equal residues on
    projectively equivalent sections.
    """
    from .lattice import is_subsection

    dom = multiplier_domain(a)
    if set(assignment) != set(dom):
        return False
    cmap = projective_class_map(a.n)
    for s, x in assignment.items():
        if x not in aut_A(a, s):
            return False
    for s, x in assignment.items():
        for t, y in assignment.items():
            if is_subsection(t, s) and x % t.order != y % t.order:
                return False
            if cmap[s] == cmap[t] and x != y:
                return False
    return True


# -- solver (a): exponent lattice + Smith normal form -------------------------


def _structured(a: SRing, domain: tuple[Section, ...]) -> tuple[list[Multiplier], int]:
    cmap = projective_class_map(a.n)
    # one variable per projective class; equivalent sections carry equal values
    reps: dict[int, Section] = {}
    for s in domain:
        reps.setdefault(cmap[s], s)
    classes = [c for c in reps if reps[c].order > 2]
    rep = [reps[c] for c in classes]  # classes of order <= 2 have trivial unit groups

    gens = [aut_A(a, s).generators() for s in rep]
    ambient = [unit_group(s.order) for s in rep]
    gen_logs = [[ambient[i].log[g] for g in gens[i]] for i in range(len(rep))]
    offsets = [0]
    for g in gens:
        offsets.append(offsets[-1] + len(g))
    nvars = offsets[-1]

    # class-level relation, then drop pairs implied by transitivity
    rel = {
        (i, j)
        for i, s in enumerate(rep)
        for j, t in enumerate(rep)
        if i != j
        and any(
            is_quasisubsection(t2, s2)
            for s2 in domain if cmap[s2] == classes[i]
            for t2 in domain if cmap[t2] == classes[j]
        )
    }
    pairs = [
        (i, j) for (i, j) in rel
        if not any((i, k) in rel and (k, j) in rel for k in range(len(rep)) if k not in (i, j))
    ]

    rows: list[list[int]] = []
    moduli: list[int] = []
    for i, j in sorted(pairs):
        s, t = rep[i], rep[j]
        amb_t = ambient[j]
        # image of each generator of aut_A(S) under reduction mod |T|, in T's log coordinates
        red = [amb_t.log[g % t.order] for g in gens[i]]
        for coord, o in enumerate(amb_t.orders):
            row = [0] * nvars
            for k, v in enumerate(red):
                row[offsets[i] + k] += v[coord]
            for k, v in enumerate(gen_logs[j]):
                row[offsets[j] + k] -= v[coord]
            rows.append(row)
            moduli.append(o)

    if rows:
        aug = [row + [o if c == r else 0 for c in range(len(rows))] for r, (row, o) in enumerate(zip(rows, moduli))]
        kernel = integer_kernel(aug)
        solutions = [v[:nvars] for v in kernel]
    else:
        solutions = [[int(i == j) for i in range(nvars)] for j in range(nvars)]

    def realize(vec) -> Multiplier:
        per_class = {}
        for i, s in enumerate(rep):
            m = s.order
            x = 1
            for k, g in enumerate(gens[i]):
                x = x * pow(g, vec[offsets[i] + k] % _order_mod(g, m), m) % m
            per_class[classes[i]] = x
        vals = tuple(per_class.get(cmap[s], 1 % s.order) for s in domain)
        return Multiplier(domain, vals)

    mults = []
    seen = set()
    for v in solutions:
        mlt = realize(v)
        if not mlt.is_identity() and mlt not in seen:
            seen.add(mlt)
            mults.append(mlt)

    # group order: subgroup of prod over classes of the ambient unit groups
    all_orders = [o for amb in ambient for o in amb.orders]
    vectors = []
    for mlt in mults:
        vec = []
        for i, s in enumerate(rep):
            vec.extend(ambient[i].log[mlt[s]])
        vectors.append(vec)
    order = abelian_subgroup_order(vectors, all_orders) if all_orders else 1
    return sorted(mults, key=lambda x: x.values), order


@lru_cache(maxsize=None)
def _order_mod(g: int, m: int) -> int:
    from .arith import multiplicative_order

    return multiplicative_order(g, m)


# -- solver (b): constraint propagation over the member sections -------------


class _CSP:
    """Backtracking over x_S in given domains with x_S = x_T mod |T| pairs."""

    def __init__(self, domain: tuple[Section, ...], values: list[list[int]]):
        self.domain = domain
        self.values = values
        pairs = _constraint_pairs(domain)
        # neighbours[j] = list of (i, modulus) constraints linking j and i
        self.links: list[list[tuple[int, int]]] = [[] for _ in domain]
        for i, j in pairs:
            mod = domain[j].order
            self.links[i].append((j, mod))
            self.links[j].append((i, mod))

    def _consistent(self, assign: list, k: int, x: int) -> bool:
        for i, mod in self.links[k]:
            y = assign[i]
            if y is not None and x % mod != y % mod:
                return False
        return True

    def solve(self, fixed: dict[int, int] | None = None, limit: int | None = None) -> Iterator[tuple[int, ...]]:
        n = len(self.domain)
        assign: list = [None] * n
        fixed = fixed or {}
        for k, x in fixed.items():
            assign[k] = x
        for k, x in fixed.items():
            if not self._consistent(assign, k, x):
                return
        order = [k for k in range(n) if k not in fixed]
        count = 0

        def rec(pos: int):
            nonlocal count
            if pos == len(order):
                count += 1
                yield tuple(assign)
                return
            k = order[pos]
            for x in self.values[k]:
                if self._consistent(assign, k, x):
                    assign[k] = x
                    yield from rec(pos + 1)
                    assign[k] = None
                    if limit is not None and count >= limit:
                        return

        yield from rec(0)


def _brute(a: SRing, domain: tuple[Section, ...], bound: int) -> set[Multiplier] | None:
    csp = _CSP(domain, [sorted(aut_A(a, s).elements) for s in domain])
    out = set()
    for sol in csp.solve(limit=bound + 1):
        out.add(Multiplier(domain, sol))
        if len(out) > bound:
            return None
    return out


# -- Mult(A) ------------------------------------------------------------------


def _require_quasidense(a: SRing) -> None:
    from .sections import is_quasidense

    if not is_quasidense(a):
        raise NotQuasidense("the ring has a rank-2 section of composite order")


@lru_cache(maxsize=None)
def multiplier_group(a: SRing, brute_bound: int = BRUTE_BOUND, check_cyclotomic: bool = True) -> MultiplierGroup:
    _require_quasidense(a)
    domain = multiplier_domain(a)
    if check_cyclotomic:
        for s in domain:
            if not is_cyclotomic(a, s):
                raise NonCyclotomicSection(s.as_list())
    gens, order = _structured(a, domain)
    group = MultiplierGroup(domain, tuple(gens), order)
    if order <= brute_bound:
        brute = _brute(a, domain, brute_bound)
        if brute is not None:
            closed = group.elements(brute_bound)
            if closed != brute or len(brute) != order:
                raise SolverDisagreement(
                    f"lattice solver gives {len(closed)} (order {order}), enumeration gives {len(brute)}"
                )
    return group


def solvable(a: SRing, s0: Section, b: int, domain_kind: str = "aut") -> bool:
    """Whether some compatible family has x_{s0} = b.

    ``domain_kind="aut"`` ranges x_S over aut_A(S); ``"units"`` over all units
    mod |S| (the coprimality condition alone).
    """
    domain = multiplier_domain(a)
    if domain_kind == "aut":
        vals = [sorted(aut_A(a, s).elements) for s in domain]
    elif domain_kind == "units":
        vals = [units(s.order) if s.order > 1 else [0] for s in domain]
    else:
        raise ValueError(domain_kind)
    csp = _CSP(domain, vals)
    k = domain.index(s0)
    return next(csp.solve(fixed={k: b % s0.order}, limit=1), None) is not None


# -- verdict ------------------------------------------------------------------


@dataclass(frozen=True)
class SchurityVerdict:
    ring: SRing
    quasidense: bool
    schurian: bool
    witness_section: Section | None = None
    failed_condition: str | None = None
    method: str = "criterion"
    surjective: bool | None = None  # restriction maps onto aut_A(S) everywhere

    def to_dict(self) -> dict:
        return {
            "ring": self.ring.to_dict(),
            "quasidense": self.quasidense,
            "schurian": self.schurian,
            "witness_section": self.witness_section.as_list() if self.witness_section else None,
            "failed_condition": self.failed_condition,
            "method": self.method,
        }


def _surjectivity_failures(a: SRing, group: MultiplierGroup) -> list[Section]:
    """Sections where the image test and the per-b test are both run and compared."""
    bad = []
    for s in group.domain:
        full = aut_A(a, s).elements
        by_image = group.image(s) == full
        by_solve = all(solvable(a, s, b) for b in sorted(full))
        if by_image != by_solve:
            raise SolverDisagreement(
                f"surjectivity at {s.as_list()}: image says {by_image}, per-element solving says {by_solve}"
            )
        if not by_image:
            bad.append(s)
    return bad


@lru_cache(maxsize=None)
def is_schurian_quasidense(a: SRing) -> SchurityVerdict:
    _require_quasidense(a)
    domain = multiplier_domain(a)
    non_cyc = [s for s in domain if not is_cyclotomic(a, s)]
    group = multiplier_group(a, check_cyclotomic=False)
    bad = _surjectivity_failures(a, group)
    surjective = not bad
    if non_cyc:
        return SchurityVerdict(a, True, False, non_cyc[0], "cyclotomic", surjective=surjective)
    if bad:
        return SchurityVerdict(a, True, False, bad[0], "surjectivity", surjective=False)
    return SchurityVerdict(a, True, True, surjective=True)
