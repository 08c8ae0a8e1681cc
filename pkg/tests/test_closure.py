import json

import pytest

from conftest import census, quasidense_census
from schurring.arith import is_composite
from schurring.closure import (
    coset_closure,
    is_extension_of,
    plain_coset_closure,
    reduce_to_quasidense,
    refinement_closure,
    s_extension,
    schurian_closure,
    singular_classes,
)
from schurring.errors import NotQuasidense, NotSingular
from schurring.lattice import Section, is_subsection, to_local
from schurring.ring import cyclotomic, elementary_coset, group_ring, leq, rank2, restrict
from schurring.sections import SectionClass, is_coset_ring, is_quasidense, s_zero


def test_coset_closure_examples():
    assert coset_closure(cyclotomic(8, [7])).closure == group_ring(8)
    z = elementary_coset(6, Section(6, 2, 2))
    assert coset_closure(z).closure == z
    assert coset_closure(group_ring(10)).closure == group_ring(10)
    with pytest.raises(NotQuasidense):
        coset_closure(rank2(6))


def test_closure_result_serializes():
    res = coset_closure(cyclotomic(8, [3, 5, 7]))
    data = json.loads(json.dumps(res.to_dict()))
    assert data["closure"]["n"] == 8
    assert all(len(pair) == 2 for pair in data["l_map"])
    assert data["witnesses"]


def test_coset_closure_properties():
    for a in quasidense_census(24):
        c = coset_closure(a).closure
        assert is_coset_ring(c)
        assert leq(a, c)
        assert coset_closure(c).closure == c
        assert c.a_groups() == a.a_groups()
        assert plain_coset_closure(a) == c


def test_coset_closure_commutes_with_restriction():
    # the admissible class is carried into the section, in local coordinates
    for a in quasidense_census(20):
        c = coset_closure(a).closure
        sz = s_zero(a)
        for s in a.a_sections():
            local = [to_local(t, s) for t in sz if is_subsection(t, s)]
            assert coset_closure(restrict(a, s), local).closure == restrict(c, s), (a, s)


def test_closure_is_group_ring_exactly_outside_admissible_hat():
    for a in quasidense_census(20):
        sz = set(s_zero(a))
        for s in a.a_sections():
            local = [to_local(t, s) for t in sz if is_subsection(t, s)]
            c = coset_closure(restrict(a, s), local).closure
            assert (c.rank == c.n) == (s in sz), (a, s)


def test_schurian_closure_examples():
    assert schurian_closure(group_ring(12)) == group_ring(12)
    assert schurian_closure(cyclotomic(8, [7])) == cyclotomic(8, [7])


def test_schurian_closure_properties():
    rings = list(quasidense_census(16))
    for a in rings:
        s = schurian_closure(a)
        assert leq(a, s)
        assert schurian_closure(s) == s
        assert coset_closure(s).closure == coset_closure(a).closure
    by_n: dict[int, list] = {}
    for a in rings:
        by_n.setdefault(a.n, []).append(a)
    for group in by_n.values():
        for a in group:
            for b in group:
                if leq(a, b):
                    assert leq(schurian_closure(a), schurian_closure(b))


def test_no_singular_classes_for_group_rings():
    for n in (6, 12, 30):
        assert singular_classes(group_ring(n)) == []


def test_quasidense_rings_have_no_composite_singular_class():
    for a in quasidense_census(24):
        assert not [c for c in singular_classes(a) if is_composite(c.order)]


def test_singular_classes_exist_in_census():
    found = [a for a in census(12, 12) if singular_classes(a)]
    assert found


def test_extension_of_rank2_z6():
    a = rank2(6)
    (c,) = singular_classes(a)
    b = s_extension(a, c)
    assert b.rank > a.rank
    assert is_quasidense(b)


def test_extension_rejects_non_singular_class():
    a = group_ring(6)
    c = SectionClass((Section(6, 1, 6),), Section(6, 1, 6), Section(6, 1, 6))
    with pytest.raises(NotSingular):
        s_extension(a, c)


def test_extension_is_unique_in_census_and_matches_refinement():
    for n in range(1, 19):
        rings = list(census(n, n))
        for a in rings:
            for c in singular_classes(a):
                if not is_composite(c.order):
                    continue
                b = s_extension(a, c)
                assert [r for r in rings if is_extension_of(r, a, c)] == [b]
                assert refinement_closure(a, c) == b


def test_reduction_loop_reaches_quasidense():
    for a in census(24):
        if not is_quasidense(a):
            b, steps = reduce_to_quasidense(a)
            assert is_quasidense(b)
            assert 1 <= len(steps) <= a.n
            assert leq(a, b)
