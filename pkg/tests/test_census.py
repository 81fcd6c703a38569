from fractions import Fraction

import pytest

from cyclicity.census import (
    BRUTE_FORCE_CAP,
    abelian_invariants,
    abelian_invariants_2group,
    center,
    commutator_subgroup,
    cyclic_census,
    cyclic_census_bruteforce,
    euler_phi,
    frattini_pgroup,
    generated_subgroup,
    involutions,
    is_nilpotent,
    order_profile,
)
from cyclicity.groups import (
    CapExceeded,
    build_abelian,
    build_abelian_2group,
    build_cyclic,
    build_generalized_dicyclic,
    build_generalized_dihedral,
    central_product,
    dihedral,
    direct_product,
    element_order,
    generalized_quaternion,
    modular_maximal_cyclic,
    quotient,
)

from conftest import (
    abelian_cyclic_subgroup_count,
    abelian_order_histogram,
    dihedral_involution_count,
)


def test_order_profile_z4():
    p = order_profile(build_cyclic(4))
    assert p.counts == {1: 1, 2: 1, 4: 2}
    assert p.exponent == 4


def test_order_profile_dihedral16_involutions():
    assert dihedral_involution_count(8) == 9
    assert order_profile(dihedral(16)).involutions == 9


def test_order_profile_central_product_involutions():
    g = central_product(dihedral(8), build_cyclic(4))
    assert order_profile(g).involutions == 7


def test_order_profile_counts_sum_to_order(corpus):
    for desc, g in corpus:
        p = order_profile(g)
        assert sum(p.counts.values()) == g.order, desc
        assert p.counts[1] == 1, desc


def test_order_profile_keys_are_prime_powers_for_p_groups(corpus):
    for desc, g in corpus:
        order = g.order
        if order & (order - 1) == 0 and order > 1:
            assert all(d & (d - 1) == 0 for d in order_profile(g).counts), desc


def test_cyclic_census_examples():
    assert cyclic_census(build_cyclic(4)).l1 == 3
    assert cyclic_census(build_cyclic(4)).alpha == Fraction(3, 4)
    assert cyclic_census(build_abelian([4, 4])).alpha == Fraction(5, 8)
    for n in range(1, 11):
        assert cyclic_census(build_abelian_2group((1,) * n)).alpha == 1


def test_generator_counts_divide_element_counts(corpus):
    for desc, g in corpus:
        profile = order_profile(g)
        census = cyclic_census(g)
        for d, c in profile.counts.items():
            assert census.counts[d] * euler_phi(d) == c, desc


def test_bruteforce_census_q8():
    assert cyclic_census_bruteforce(generalized_quaternion(8)).l1 == 5


def test_bruteforce_census_z2xz4():
    # Independent oracle: materialize cycles with modular arithmetic only.
    assert abelian_cyclic_subgroup_count((2, 4)) == 6
    assert cyclic_census_bruteforce(build_abelian([2, 4])).l1 == 6


def test_dual_oracle_censuses_agree(corpus):
    for desc, g in corpus:
        if g.order <= BRUTE_FORCE_CAP:
            fast = cyclic_census(g)
            brute = cyclic_census_bruteforce(g)
            assert fast.counts == brute.counts, desc
            assert fast.l1 == brute.l1, desc
            assert fast.alpha == brute.alpha, desc


def test_dual_oracle_larger_abelian_groups():
    for moduli in ((32, 32), (2, 2, 256), (4, 8, 32)):
        g = build_abelian(moduli)
        assert g.order == 1024
        assert cyclic_census(g).counts == cyclic_census_bruteforce(g).counts


def test_generated_subgroup_empty_is_trivial():
    g = dihedral(16)
    assert generated_subgroup(g, []) == (g.identity,)


def test_generated_subgroup_rotation_in_dihedral16():
    g = dihedral(16)
    sub = generated_subgroup(g, [(1, 0)])
    assert len(sub) == 8
    assert all(e[1] == 0 for e in sub)


def test_generated_subgroup_dihedral_subgroup():
    g = dihedral(16)
    sub = generated_subgroup(g, [(2, 0), (0, 1)])
    assert len(sub) == 8
    assert sub == tuple(sorted((i, e) for i in (0, 2, 4, 6) for e in (0, 1)))


def test_generated_subgroup_rejects_foreign_elements():
    with pytest.raises(ValueError):
        generated_subgroup(dihedral(16), [(9, 0)])


def test_commutator_subgroup_abelian_is_trivial():
    g = build_abelian([4, 4])
    assert commutator_subgroup(g) == (g.identity,)


def test_commutator_subgroup_dihedral8():
    sub = commutator_subgroup(dihedral(8))
    assert sub == ((0, 0), (2, 0))


def test_commutator_subgroup_central_products():
    assert len(commutator_subgroup(central_product(dihedral(8), dihedral(8)))) == 2
    assert len(commutator_subgroup(central_product(dihedral(8), build_cyclic(4)))) == 2


def test_frattini_of_elementary_abelian_is_trivial():
    g = build_abelian_2group((1, 1, 1))
    assert frattini_pgroup(g, 2) == (g.identity,)


def test_frattini_of_z4():
    assert frattini_pgroup(build_cyclic(4), 2) == ((0,), (2,))


def test_frattini_of_quaternion_equals_commutator():
    q8 = generalized_quaternion(8)
    assert frattini_pgroup(q8, 2) == commutator_subgroup(q8)
    assert len(frattini_pgroup(q8, 2)) == 2


def test_frattini_rejects_non_p_group():
    with pytest.raises(ValueError):
        frattini_pgroup(build_cyclic(6), 2)


def test_center_of_abelian_is_everything():
    g = build_abelian([2, 4])
    assert len(center(g)) == 8


def test_center_of_extraspecial_is_z2():
    g = central_product(dihedral(8), dihedral(8))
    assert len(center(g)) == 2


def test_center_of_almost_extraspecial_is_cyclic_of_order_4():
    g = central_product(dihedral(8), build_cyclic(4))
    z = center(g)
    assert len(z) == 4
    assert max(element_order(g, e) for e in z) == 4


def test_nilpotency_of_p_groups(corpus):
    for desc, g in corpus:
        order = g.order
        if order > 1 and order & (order - 1) == 0 and order <= 64:
            assert is_nilpotent(g), desc


def test_nilpotency_fails_for_odd_dihedralization():
    assert not is_nilpotent(build_generalized_dihedral(build_cyclic(3)))


def test_nilpotency_of_coprime_product():
    g = direct_product(generalized_quaternion(8), build_cyclic(3))
    assert is_nilpotent(g)


def test_abelian_invariants_roundtrip():
    shapes = abelian_invariants(build_abelian([4, 2]))
    assert shapes[2].partition == (1, 2)


def test_abelian_invariants_of_dicyclic_over_elementary():
    base = build_abelian_2group((1, 1, 1))
    dic = build_generalized_dicyclic(base, involutions(base)[0])
    assert abelian_invariants_2group(dic) == (1, 1, 2)


def test_abelian_invariants_of_modular16_abelianization():
    g = modular_maximal_cyclic(16)
    derived = commutator_subgroup(g)
    assert len(derived) == 2
    q = quotient(g, derived)
    assert abelian_invariants_2group(q) == (1, 2)


def test_abelian_invariants_mixed_order():
    shapes = abelian_invariants(build_abelian([4, 3, 2]))
    assert shapes[2].partition == (1, 2)
    assert shapes[3].partition == (1,)


def test_abelian_invariants_reject_nonabelian():
    with pytest.raises(ValueError):
        abelian_invariants(dihedral(8))


def test_census_cap_enforced():
    g = build_abelian_2group((1,) * 13)
    with pytest.raises(CapExceeded):
        order_profile(g)
    with pytest.raises(CapExceeded):
        cyclic_census_bruteforce(build_abelian_2group((1,) * 11))


def test_census_against_arithmetic_oracle():
    for moduli in ((8,), (2, 8), (4, 8), (2, 2, 4), (3, 9), (5, 5)):
        oracle = abelian_order_histogram(moduli)
        assert order_profile(build_abelian(moduli)).counts == oracle
