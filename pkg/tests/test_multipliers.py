import pytest

from conftest import quasidense_census
from schurring.arith import units
from schurring.errors import NotASection, NotQuasidense
from schurring.lattice import Section, all_sections, from_local
from schurring.multipliers import (
    aut_A,
    is_cyclotomic,
    is_multiplier,
    is_schurian_quasidense,
    multiplier_domain,
    multiplier_group,
    solvable,
)
from schurring.oracle import unit_subgroups
from schurring.ring import cyclotomic, group_ring, rank2, restrict


def G(n):
    return Section(n, 1, n)


def test_aut_examples():
    # singletons are fixed only by the identity
    assert set(aut_A(group_ring(9), G(9))) == {1}
    assert set(aut_A(rank2(9), G(9))) == set(units(9))
    assert set(aut_A(cyclotomic(8, [7]), G(8))) == {1, 7}
    assert set(aut_A(rank2(5), G(5))) == {1, 2, 3, 4}
    with pytest.raises(NotASection):
        aut_A(rank2(6), Section(6, 1, 2))


def test_cyclotomic_predicate():
    for n in (7, 8, 12):
        for h in unit_subgroups(n):
            assert is_cyclotomic(cyclotomic(n, sorted(h)), G(n))
    assert is_cyclotomic(group_ring(10), G(10))
    assert not is_cyclotomic(rank2(8), G(8))


def test_group_ring_has_trivial_multiplier_group():
    for n in (6, 8, 9, 12, 15):
        grp = multiplier_group(group_ring(n))
        assert grp.order == 1
        assert set(grp.domain) == set(all_sections(n))


def test_cyclotomic_full_group_multipliers_are_global_units():
    # cyc over the whole unit group: every unit b gives x_S = b mod |S|
    for n in (7, 15, 21):
        a = cyclotomic(n, units(n))
        grp = multiplier_group(a)
        dom = grp.domain
        assert grp.order == len(units(n))
        for m in grp.elements():
            b = m[G(n)]
            assert all(x == b % s.order for s, x in zip(dom, m.values))


def test_prime_order_multipliers():
    for p in (5, 7, 11, 13):
        for h in unit_subgroups(p):
            a = cyclotomic(p, sorted(h))
            assert multiplier_group(a).order == len(h)
            assert is_schurian_quasidense(a).schurian


def test_identity_and_preconditions():
    grp = multiplier_group(cyclotomic(8, [7]))
    assert grp.identity() in grp.elements()
    with pytest.raises(NotQuasidense):
        multiplier_group(rank2(6))
    with pytest.raises(NotQuasidense):
        is_schurian_quasidense(rank2(6))


def test_group_members_satisfy_definition():
    for a in quasidense_census(20):
        grp = multiplier_group(a, check_cyclotomic=False)
        elems = grp.elements()
        assert len(elems) == grp.order
        for m in elems:
            assert is_multiplier(a, m.as_dict())
        for s in grp.domain:
            assert grp.image(s) <= aut_A(a, s).elements


def test_restriction_of_multiplier_to_section():
    for a in quasidense_census(20):
        grp = multiplier_group(a, check_cyclotomic=False)
        for t in a.a_sections():
            at = restrict(a, t)
            dom = multiplier_domain(at)
            for g in grp.generators:
                vals = g.as_dict()
                assert is_multiplier(at, {s: vals[from_local(s, t)] for s in dom})


def test_verdict_examples():
    v = is_schurian_quasidense(group_ring(12))
    assert v.schurian and v.to_dict()["failed_condition"] is None
    assert v.to_dict()["witness_section"] is None
    assert is_schurian_quasidense(cyclotomic(8, [7])).schurian


def test_per_element_solvability_matches_image():
    for a in quasidense_census(16):
        grp = multiplier_group(a, check_cyclotomic=False)
        for s in grp.domain:
            full = aut_A(a, s).elements
            assert (grp.image(s) == full) == all(solvable(a, s, b) for b in full)


def test_units_only_domain_is_weaker():
    # with unit domains the system is always at least as solvable
    for a in quasidense_census(12):
        for s in multiplier_domain(a):
            for b in aut_A(a, s):
                if solvable(a, s, b):
                    assert solvable(a, s, b, domain_kind="units")


# Two non-schurian rings over Z_72 found by a census scan; one fails the
# cyclotomic requirement, the other fails surjectivity.
_NONSCHURIAN_72 = [
    ([[0], [1, 5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47, 49, 53, 55, 59, 61, 65, 67, 71],
      [2, 22, 26, 46, 50, 70], [3, 15, 21, 33], [4, 20, 28, 44, 52, 68], [6, 30, 42, 66],
      [8, 16, 32, 40, 56, 64], [9, 27, 45, 63], [10, 14, 34, 38, 58, 62], [12, 60], [18, 54], [24, 48],
      [36], [39, 51, 57, 69]], "cyclotomic"),
    ([[0], [1, 5, 7, 11, 13, 17, 19, 23, 25, 29, 31, 35, 37, 41, 43, 47, 49, 53, 55, 59, 61, 65, 67, 71],
      [2, 34, 38, 70], [3, 9, 27, 33, 51, 57], [4, 32, 40, 68], [6, 66], [8, 28, 44, 64],
      [10, 26, 46, 62], [12, 60], [14, 22, 50, 58], [15, 21, 39, 45, 63, 69], [16, 20, 52, 56],
      [18, 54], [24, 48], [30, 42], [36]], "surjectivity"),
]


@pytest.mark.slow
@pytest.mark.parametrize("blocks,reason", _NONSCHURIAN_72)
def test_nonschurian_examples_at_72(blocks, reason):
    from schurring.closure import schurian_closure
    from schurring.oracle import oracle_is_schurian, oracle_sch
    from schurring.ring import validate

    a = validate(72, blocks)
    v = is_schurian_quasidense(a)
    assert v.quasidense and not v.schurian and v.failed_condition == reason
    assert not oracle_is_schurian(a)
    assert schurian_closure(a) == oracle_sch(a)
