import pytest

from conftest import census, quasidense_census
from schurring.closure import s_zero_from_closure
from schurring.errors import NotAdmissible
from schurring.lattice import Section, all_sections
from schurring.ring import cyclotomic, elementary_coset, group_ring, gwr, leq, rank2, restrict
from schurring.sections import (
    a_section_info,
    check_admissible,
    gwr_sections,
    is_coset_ring,
    is_dense,
    is_quasidense,
    is_wreath_section,
    principal_sections,
    radical_and_span,
    ring_radical,
    s_zero,
    sigma_hat,
)

C8 = cyclotomic(8, [7])


def S(n, l, u):
    return Section(n, l, u)


def test_radical_and_span_examples():
    assert radical_and_span(C8, (2, 6)) == (2, 4)
    assert radical_and_span(C8, (0,)) == (1, 1)
    assert radical_and_span(C8, (1, 7)) == (1, 8)


def test_principal_sections_examples():
    nontrivial = {s for s in principal_sections(C8) if s.order > 1}
    assert nontrivial == {S(8, 1, 2), S(8, 2, 4), S(8, 1, 8)}
    assert principal_sections(rank2(6)) == {S(6, 1, 1), S(6, 1, 6)}
    assert rank2(6).a_sections() == [S(6, 1, 1), S(6, 1, 6), S(6, 6, 6)]


def test_group_ring_every_section_principal_up_to_trivial():
    for n in (6, 8, 12):
        info = a_section_info(group_ring(n))
        assert all(i.quasisubprincipal for i in info)
        assert set(s_zero(group_ring(n))) == set(all_sections(n))


def test_quasidense_examples():
    assert not is_quasidense(rank2(6))
    assert is_quasidense(group_ring(30))
    assert is_quasidense(C8)
    assert is_quasidense(rank2(7))


def test_coset_examples():
    assert not is_coset_ring(C8)
    assert is_coset_ring(cyclotomic(8, [3, 5, 7]))
    z = elementary_coset(6, S(6, 2, 2))
    assert is_coset_ring(z)
    assert (S(6, 2, 2), True) in gwr_sections(z)


def test_wreath_sections():
    a = gwr(group_ring(2), rank2(3), S(6, 2, 2))
    assert is_wreath_section(a, S(6, 2, 2))
    assert not is_wreath_section(rank2(6), S(6, 2, 2))


def test_sigma_hat_prime_power_and_admissibility():
    base = [i.section for i in a_section_info(C8) if i.quasisubprincipal]
    assert set(sigma_hat(C8, base)) == set(base)
    with pytest.raises(NotAdmissible):
        check_admissible(C8, [S(8, 1, 8)])


def test_s_zero_of_small_wreath():
    a = gwr(group_ring(2), rank2(3), S(6, 2, 2))
    got = set(s_zero(a))
    assert S(6, 1, 2) in got and S(6, 2, 6) in got
    assert S(6, 1, 6) not in got


def test_s_zero_agrees_with_closure_characterisation():
    # s_zero is also the set of sections on which the plain coset closure is the group ring
    for a in quasidense_census(24):
        assert set(s_zero(a)) == set(s_zero_from_closure(a)), a


def test_trivial_radical_sections_are_subprincipal():
    for a in census(24):
        for info in a_section_info(a):
            if info.trivial_radical:
                assert info.subprincipal, (a, info.section)


def test_quasidensity_is_inherited_by_extensions():
    for n in range(1, 17):
        rings = [a for a in census(n, n)]
        for a in rings:
            if is_quasidense(a):
                for b in rings:
                    if leq(a, b):
                        assert is_quasidense(b), (a, b)


def test_quasidense_trivial_radical_is_dense_and_cyclotomic():
    from schurring.multipliers import is_cyclotomic

    for a in quasidense_census(24):
        if ring_radical(a) == 1:
            assert is_dense(a)
            assert is_cyclotomic(a, S(a.n, 1, a.n))


def test_restriction_of_quasidense_is_quasidense():
    for a in quasidense_census(18):
        for s in a.a_sections():
            assert is_quasidense(restrict(a, s))
