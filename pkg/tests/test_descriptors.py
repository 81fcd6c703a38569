import random
from fractions import Fraction

import pytest

from cyclicity.census import cyclic_census
from cyclicity.descriptors import (
    CentralProduct,
    Cyclic,
    CyclicPower,
    DescriptorSyntaxError,
    Dicyclization,
    Dihedralization,
    DirectProduct,
    NamedFamily,
    build_from_descriptor,
    canonical_key,
    canonical_string,
    canonicalize,
    parse_descriptor,
    predicted_order,
    shape_descriptor,
)
from cyclicity.groups import CapExceeded


def test_parse_direct_product_with_power():
    node = parse_descriptor("Z2^3 x Z4")
    assert node == DirectProduct((CyclicPower(2, 3), Cyclic(4)))


def test_parse_central_product_binds_tighter():
    node = parse_descriptor("D8*D8*Z4 x Z2")
    assert node == DirectProduct(
        (CentralProduct((NamedFamily("D", 8), NamedFamily("D", 8), Cyclic(4))), Cyclic(2))
    )
    assert predicted_order(parse_descriptor("D8*D8*Z4")) == 64


def test_parse_dicyclic_atom():
    node = parse_descriptor("Dic(Z2^2 x Z4)")
    assert node == Dicyclization(DirectProduct((CyclicPower(2, 2), Cyclic(4))), None)
    node = parse_descriptor("dic(z4, 0)")
    assert node == Dicyclization(Cyclic(4), 0)


def test_parse_is_case_and_whitespace_insensitive():
    assert parse_descriptor("  z2^3X z4 ") == parse_descriptor("Z2^3 x Z4")


def test_canonical_sorts_direct_factors_and_merges_powers():
    assert canonical_key("Z4 x Z2 x Z4") == "Z2 x Z4^2"
    assert canonical_key("Z2 x Z2 x Z2") == "Z2^3"
    assert canonical_key("D8 x Z2 x D8") == "D8 x D8 x Z2"
    assert canonical_key("Z4^1") == "Z4"


def test_canonical_key_is_idempotent():
    cases = [
        "Z2^3 x Z4",
        "D8*D8*Z4",
        "Dic(Z4 x Z2)",
        "Dih(Z8 x Z2)",
        "ES+(32) x Z2",
        "Q32 x D8*Q8",
        "Z16 x Z2 x Z16",
    ]
    for text in cases:
        once = canonical_key(text)
        assert canonical_key(once) == once


def test_syntax_error_positions():
    with pytest.raises(DescriptorSyntaxError) as err:
        parse_descriptor("Z2 x x Z4")
    assert err.value.position == 5
    with pytest.raises(DescriptorSyntaxError) as err:
        parse_descriptor("Z2 @ Z4")
    assert err.value.position == 3
    with pytest.raises(DescriptorSyntaxError) as err:
        parse_descriptor("W8")
    assert err.value.position == 0
    assert "known atom" in str(err.value)


def test_family_parameter_validation():
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor("Q6")
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor("SD8")
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor("ES+(16)")
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor("AES(32)")
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor("Z0")


def test_trailing_garbage_rejected():
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor("Z4)")
    with pytest.raises(DescriptorSyntaxError):
        parse_descriptor("Dic(Z4")


def test_build_aes_matches_explicit_central_product():
    a = cyclic_census(build_from_descriptor("AES(16)"))
    b = cyclic_census(build_from_descriptor("D8*Z4"))
    assert a.counts == b.counts


def test_build_trivial_group():
    g = build_from_descriptor("Z1")
    assert g.order == 1


def test_build_dihedralization():
    g = build_from_descriptor("Dih(Z8)")
    assert g.order == 16
    assert cyclic_census(g).alpha == Fraction(3, 4)


def test_build_dicyclic_with_explicit_index():
    g0 = build_from_descriptor("Dic(Z2 x Z4, 0)")
    g1 = build_from_descriptor("Dic(Z2 x Z4, 2)")
    assert g0.order == g1.order == 16
    with pytest.raises(ValueError):
        build_from_descriptor("Dic(Z2 x Z4, 3)")
    with pytest.raises(ValueError):
        build_from_descriptor("Dic(Z3)")


def test_build_rejects_nonabelian_dicyclic_base():
    with pytest.raises(ValueError):
        build_from_descriptor("Dic(D8)")


def test_build_respects_order_cap():
    with pytest.raises(CapExceeded):
        build_from_descriptor("Z2^20")


def test_predicted_order_matches_built_order():
    for text in ("Z2^3 x Z4", "D8*D8*Z4", "Dic(Z2^2 x Z4)", "ES-(32)", "Dih(Z2 x Z8)"):
        node = parse_descriptor(text)
        assert build_from_descriptor(text).order == predicted_order(node)


def test_shape_descriptor():
    assert shape_descriptor((1, 1, 2)) == "Z2^2 x Z4"
    assert shape_descriptor((3,)) == "Z8"
    assert shape_descriptor((1, 2), p=3) == "Z3 x Z9"


def random_canonical_ast(rng: random.Random, depth: int = 0):
    """Random descriptor AST already in canonical form."""
    return canonicalize(random_ast(rng, depth))


def random_atom(rng: random.Random, depth: int):
    roll = rng.random()
    if roll < 0.35:
        modulus = rng.choice((1, 2, 3, 4, 5, 8, 9, 16, 32))
        copies = rng.choice((1, 1, 1, 2, 3, 5))
        return Cyclic(modulus) if copies == 1 else CyclicPower(modulus, copies)
    if roll < 0.6:
        family = rng.choice(("D", "Q", "SD", "M"))
        minimum = 8 if family in ("D", "Q") else 16
        order = minimum * 2 ** rng.randint(0, 3)
        return NamedFamily(family, order)
    if roll < 0.75:
        family = rng.choice(("ES+", "ES-", "AES"))
        r = rng.randint(1, 3)
        order = 2 ** (2 * r + 1) if family.startswith("ES") else 2 ** (2 * r + 2)
        return NamedFamily(family, order)
    if depth >= 2 or roll < 0.88:
        return Dihedralization(random_ast(rng, depth + 1))
    index = rng.choice((None, 0, 1, 3))
    return Dicyclization(random_ast(rng, depth + 1), index)


def random_ast(rng: random.Random, depth: int = 0):
    roll = rng.random()
    if depth >= 2 or roll < 0.4:
        return random_atom(rng, depth)
    if roll < 0.75:
        return DirectProduct(
            tuple(random_term(rng, depth + 1) for _ in range(rng.randint(2, 4)))
        )
    return random_term(rng, depth, force=True)


def random_term(rng: random.Random, depth: int, force: bool = False):
    if not force and rng.random() < 0.7:
        return random_atom(rng, depth)
    return CentralProduct(tuple(random_atom(rng, depth) for _ in range(rng.randint(2, 3))))


def test_roundtrip_random_asts():
    rng = random.Random(1318)
    for _ in range(10_000):
        node = random_canonical_ast(rng)
        text = canonical_string(node)
        assert parse_descriptor(text) == node, text
        assert canonical_key(text) == text, text
