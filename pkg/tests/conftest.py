"""Shared corpus and independent oracles for the test suite.

The oracle helpers deliberately avoid the library's multiplication code so
they can serve as second witnesses for derived expected values.
"""

from __future__ import annotations

import itertools
import math

import pytest

from cyclicity.descriptors import build_from_descriptor

# One representative per construction kind, kept small enough for exhaustive
# law checks and dual-oracle censuses.
CORPUS_DESCRIPTORS = (
    "Z1",
    "Z2",
    "Z4",
    "Z8",
    "Z16",
    "Z2^3",
    "Z2 x Z4",
    "Z4 x Z4",
    "Z2^2 x Z4",
    "Z2 x Z8",
    "Z4 x Z8",
    "Z2^5",
    "D8",
    "Q8",
    "D16",
    "Q16",
    "SD16",
    "M16",
    "D32",
    "Q32",
    "SD32",
    "M32",
    "Dih(Z8)",
    "Dih(Z2 x Z4)",
    "Dih(Z2^3)",
    "Dic(Z4)",
    "Dic(Z2 x Z4)",
    "Dic(Z2^3)",
    "Dic(Z4 x Z4)",
    "D8*Z4",
    "D8*D8",
    "D8*Q8",
    "ES+(32)",
    "ES-(32)",
    "AES(64)",
    "D8*D8*Z4",
    "Z3",
    "Z9",
    "Z3^2",
    "Z5",
    "Z6",
    "Z2 x Z3",
)


@pytest.fixture(scope="session")
def corpus():
    return [(desc, build_from_descriptor(desc)) for desc in CORPUS_DESCRIPTORS]


def abelian_element_order(moduli, residues) -> int:
    """Order of a residue tuple in a direct sum of cyclic groups."""
    orders = [m // math.gcd(m, r) for m, r in zip(moduli, residues)]
    return math.lcm(*orders) if orders else 1


def abelian_order_histogram(moduli) -> dict[int, int]:
    """Element-order counts of a direct sum of cyclic groups, by arithmetic."""
    counts: dict[int, int] = {}
    for tup in itertools.product(*(range(m) for m in moduli)):
        k = abelian_element_order(moduli, tup)
        counts[k] = counts.get(k, 0) + 1
    return counts


def abelian_cyclic_subgroup_count(moduli) -> int:
    """Number of distinct cyclic subgroups of a direct sum of cyclic groups.

    Materializes the cycle generated by every element with plain modular
    arithmetic and deduplicates the element sets.
    """
    subgroups = set()
    for tup in itertools.product(*(range(m) for m in moduli)):
        members = set()
        cur = tuple(0 for _ in moduli)
        while cur not in members:
            members.add(cur)
            cur = tuple((c + t) % m for c, t, m in zip(cur, tup, moduli))
        subgroups.add(frozenset(members))
    return len(subgroups)


def dihedral_involution_count(half_order: int) -> int:
    """Involutions of the symmetry group of a regular half_order-gon.

    Uses the (rotation, reflection) pair model directly: reflections square to
    the identity, a rotation is an involution exactly when doubled it is zero.
    """
    count = half_order  # all reflections
    count += sum(1 for r in range(1, half_order) if (2 * r) % half_order == 0)
    return count
