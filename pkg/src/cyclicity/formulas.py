"""Closed-form counting formulas, evaluated in exact integer arithmetic.

These are the fast path for large parameters and the counterpart oracle to
the brute-force censuses.  No floating point appears anywhere: membership
tests against 3/4 are exact equality tests on reduced rationals.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator

from .groups import AbelianShape, InternalInconsistency

AlphaValue = Fraction


class FamilyKind(str, Enum):
    """The four 2-group families with a cyclic maximal subgroup."""

    MODULAR = "modular"
    DIHEDRAL = "dihedral"
    GENERALIZED_QUATERNION = "generalized-quaternion"
    QUASI_DIHEDRAL = "quasi-dihedral"

    @property
    def min_n(self) -> int:
        return _FAMILY_MIN_N[self]


_FAMILY_MIN_N = {
    FamilyKind.MODULAR: 4,
    FamilyKind.DIHEDRAL: 3,
    FamilyKind.GENERALIZED_QUATERNION: 3,
    FamilyKind.QUASI_DIHEDRAL: 4,
}


def torsion_count(shape: AbelianShape, i: int) -> int:
    """Count of solutions of g^(p^i) = identity in the first k-1 cyclic factors.

    Piecewise in i with regions delimited by the partition entries; the
    regions overlap at breakpoints, where all applicable expressions must
    agree exactly.
    """
    if i < 0:
        raise ValueError(f"i must be nonnegative, got {i}")
    p = shape.p
    d = (0,) + shape.partition
    k = len(shape.partition)
    values = []
    for j in range(k):
        lo = d[j]
        hi = d[j + 1] if j < k - 1 else None
        if lo <= i and (hi is None or i <= hi):
            prefix = sum(d[1 : j + 1])
            values.append(p ** ((k - 1 - j) * i + prefix))
    if not values:
        raise InternalInconsistency(f"no region of the piecewise table covers i={i}")
    if any(v != values[0] for v in values):
        raise InternalInconsistency(
            f"piecewise regions disagree at breakpoint i={i}: {values}"
        )
    return values[0]


def cyclic_count(shape: AbelianShape, i: int) -> int:
    """Number of cyclic subgroups of order p^i in the abelian group of this shape."""
    d_k = shape.partition[-1]
    if not 1 <= i <= d_k:
        raise ValueError(f"i must satisfy 1 <= i <= {d_k}, got {i}")
    p = shape.p
    numerator = p**i * torsion_count(shape, i) - p ** (i - 1) * torsion_count(shape, i - 1)
    quotient, rem = divmod(numerator, p**i - p ** (i - 1))
    if rem:
        raise InternalInconsistency(
            f"cyclic subgroup count for p^{i} is not an integer: {numerator} r {rem}"
        )
    return quotient


def l1_abelian(shape: AbelianShape) -> int:
    """Total number of cyclic subgroups of the abelian group of this shape.

    Evaluated twice, once through the direct summation expression and once as
    1 plus the per-order counts; the routes must agree exactly.
    """
    p = shape.p
    d = (0,) + shape.partition
    k = len(shape.partition)
    acc = Fraction(0)
    for i in range(k - 1):
        prefix = sum(d[: i + 1])  # d_0 + d_1 + ... + d_i
        acc += (
            p**prefix
            * Fraction(p ** (k - i) - 1, p ** (k - i - 1) - 1)
            * (p ** ((k - i - 1) * d[i + 1]) - p ** ((k - i - 1) * d[i]))
        )
    total = 1 + acc / (p - 1) + (d[k] - d[k - 1]) * p ** sum(d[:k])
    if total.denominator != 1:
        raise InternalInconsistency(f"summation expression is not an integer: {total}")
    direct = int(total)
    per_order = 1 + sum(cyclic_count(shape, i) for i in range(1, d[k] + 1))
    if direct != per_order:
        raise InternalInconsistency(
            f"summation expression gives {direct} but per-order counts give {per_order}"
        )
    return direct


def l1_maximal_cyclic(kind: FamilyKind, n: int) -> int:
    """Total cyclic subgroup count for the order-2^n member of a maximal-cyclic family."""
    kind = FamilyKind(kind)
    if n < kind.min_n:
        raise ValueError(f"{kind.value} family requires n >= {kind.min_n}, got {n}")
    if kind is FamilyKind.MODULAR:
        return 2 * n
    if kind is FamilyKind.DIHEDRAL:
        return 2 ** (n - 1) + n
    if kind is FamilyKind.GENERALIZED_QUATERNION:
        return 2 ** (n - 2) + n
    return 3 * 2 ** (n - 3) + n


def central_product_counts(n: int, n2_of_inner: int) -> tuple[int, int]:
    """(n2, n4) for an order-2^n central product of D8 with an inner factor.

    Valid when the product is (almost) extraspecial; n2_of_inner is the number
    of order-2 cyclic subgroups of the inner factor.
    """
    if n < 4:
        raise ValueError(f"central product counts require n >= 4, got {n}")
    if n2_of_inner < 0:
        raise ValueError(f"inner involution count must be nonnegative, got {n2_of_inner}")
    n2 = 2 ** (n - 2) + 2 * n2_of_inner + 1
    n4 = 3 * 2 ** (n - 3) - n2_of_inner - 1
    return n2, n4


def l1_dicyclic(l1_of_base: int, n: int) -> int:
    """Cyclic subgroup count of the order-2^n generalized dicyclic group over a base."""
    if l1_of_base < 1 or n < 2:
        raise ValueError(f"arguments must be positive with n >= 2, got ({l1_of_base}, {n})")
    return l1_of_base + 2 ** (n - 2)


def l1_gen_dihedral(l1_of_base: int, order_of_base: int) -> int:
    """Cyclic subgroup count of the generalized dihedral group over a base."""
    if l1_of_base < 1 or order_of_base < 1:
        raise ValueError(f"arguments must be positive, got ({l1_of_base}, {order_of_base})")
    return l1_of_base + order_of_base


def special_profile_n2_n8(n: int, a: int, b: int) -> tuple[int, int]:
    """(n2, n8) for the abelian group Z_2^n x Z_4^a x Z_8^b."""
    if n < 0 or a < 0 or b < 0:
        raise ValueError(f"exponents must be nonnegative, got ({n}, {a}, {b})")
    if a + b < 1:
        raise ValueError("at least one of a and b must be strictly positive")
    n2 = 2 ** (n + a + b) - 1
    n8 = 2 ** (n + 2 * a + 2 * b - 2) * (2**b - 1)
    return n2, n8


def alpha_of(l1: int, order: int) -> Fraction:
    """Exact reduced ratio of cyclic subgroup count to group order."""
    if order < 1:
        raise ValueError(f"group order must be positive, got {order}")
    return Fraction(l1, order)


def alpha_product(values: Iterable[Fraction]) -> Fraction:
    """Exact product of ratios."""
    acc = Fraction(1)
    for v in values:
        acc *= Fraction(v)
    return acc


def partitions(n: int, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """All nondecreasing partitions of n into parts of at least min_part."""
    if n == 0:
        yield ()
        return
    for first in range(min_part, n + 1):
        for rest in partitions(n - first, first):
            yield (first,) + rest
