import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurring.arith import units
from schurring.errors import (
    MissingIdentityBlock,
    ModulusMismatch,
    NonUnitMultiplier,
    NotAPartition,
    NotCoprime,
    NotInverseClosed,
    NotModuleClosed,
    RestrictionMismatch,
)
from schurring.lattice import Section
from schurring.ring import (
    SRing,
    closure_of_partition,
    cyclotomic,
    elementary_coset,
    group_ring,
    gwr,
    leq,
    meet,
    quotient,
    rank2,
    restrict,
    subring,
    tensor,
    validate,
)


def blocks(r):
    return [list(b) for b in r.blocks]


def test_validate_accepts_and_canonicalizes():
    r = validate(8, [[4], [5, 3], [0], [7, 1], [6, 2]])
    assert blocks(r) == [[0], [1, 7], [2, 6], [3, 5], [4]]
    assert r == cyclotomic(8, [7])


@pytest.mark.parametrize(
    "n, parts, err",
    [
        (4, [[0], [1, 2]], NotAPartition),
        (4, [[0], [1, 2], [2, 3]], NotAPartition),
        (4, [[0, 2], [1, 3]], MissingIdentityBlock),
        (5, [[0], [1], [2, 3, 4]], NotInverseClosed),
        (6, [[0], [1, 5], [2, 3, 4]], NotModuleClosed),
    ],
)
def test_validate_rejects(n, parts, err):
    with pytest.raises(err):
        validate(n, parts)


def test_module_failure_reports_triple():
    with pytest.raises(NotModuleClosed) as info:
        validate(6, [[0], [1, 5], [2, 3, 4]])
    assert info.value.triple is not None


def test_cyclotomic_examples():
    assert blocks(cyclotomic(8, [3, 5])) == [[0], [1, 3, 5, 7], [2, 6], [4]]
    assert cyclotomic(7, [3]) == rank2(7)
    with pytest.raises(NonUnitMultiplier):
        cyclotomic(8, [2])


def test_tensor_example():
    r = tensor(group_ring(2), rank2(3))
    assert blocks(r) == [[0], [1, 5], [2, 4], [3]]
    with pytest.raises(NotCoprime):
        tensor(group_ring(2), group_ring(4))


def test_gwr_examples():
    # Z_2 wr Z_3 and Z_3 wr Z_2 over Z_6, both built as wreath products over trivial sections
    a = gwr(group_ring(2), rank2(3), Section(6, 2, 2))
    b = gwr(group_ring(3), rank2(2), Section(6, 3, 3))
    assert blocks(a) == [[0], [1, 2, 4, 5], [3]]
    assert blocks(b) == [[0], [1, 3, 5], [2], [4]]
    assert meet(a, b) == rank2(6)
    with pytest.raises(RestrictionMismatch):
        gwr(rank2(4), group_ring(4), Section(8, 2, 4))
    with pytest.raises(ModulusMismatch):
        gwr(group_ring(3), group_ring(3), Section(8, 2, 4))


def test_elementary_coset_and_restriction():
    z = elementary_coset(8, Section(8, 2, 4))
    assert blocks(z) == [[0], [1, 5], [2], [3, 7], [4], [6]]
    assert blocks(restrict(rank2(4), Section(4, 1, 4))) == [[0], [1, 2, 3]]
    a = cyclotomic(8, [3, 5])
    assert blocks(restrict(a, Section(8, 2, 8))) == [[0], [1, 3], [2]]
    assert subring(a, 4) == validate(4, [[0], [1, 3], [2]])
    assert quotient(a, 4) == group_ring(2)


def test_leq_and_meet():
    assert leq(rank2(6), group_ring(6))
    assert not leq(group_ring(6), rank2(6))
    assert meet(group_ring(6), rank2(6)) == rank2(6)


def test_json_round_trip():
    r = cyclotomic(12, [5, 7])
    assert SRing.from_json(r.to_json()) == r
    assert json.loads(r.to_json())["n"] == 12
    assert str(group_ring(2)) == "SRing(Z_2: {0},{1})"


def test_closure_of_partition():
    # the smallest ring splitting {1,..,5} of Z_6 into {1,5} and the rest
    r = closure_of_partition(6, [[0], [1, 5], [2, 3, 4]])
    assert leq(validate(6, [[0], [1, 2, 3, 4, 5]]), r)
    assert all(len(set(b) & {1, 5}) in (0, len(b)) for b in r.blocks)
    assert closure_of_partition(6, blocks(rank2(6))) == rank2(6)


@st.composite
def cyclotomic_rings(draw):
    n = draw(st.integers(1, 40))
    us = units(n)
    ks = draw(st.lists(st.sampled_from(us), max_size=3))
    return cyclotomic(n, ks)


@given(cyclotomic_rings(), cyclotomic_rings())
@settings(max_examples=40, deadline=None)
def test_constructions_stay_valid(a, b):
    from math import gcd

    if gcd(a.n, b.n) == 1:
        t = tensor(a, b)
        assert validate(t.n, t.blocks) == t
        assert t.rank == a.rank * b.rank
    if a.n == b.n:
        m = meet(a, b)
        assert leq(m, a) and leq(m, b)


@given(cyclotomic_rings())
@settings(max_examples=40, deadline=None)
def test_restrictions_of_cyclotomic_rings_are_valid(a):
    for s in a.a_sections():
        r = restrict(a, s)
        assert r.n == s.order
        assert validate(r.n, r.blocks) == r
