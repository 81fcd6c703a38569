"""Brute-force structural analysis of constructed groups.

Order profiles, cyclic-subgroup censuses (two independent routes), generated
subgroups, commutator and Frattini subgroups, centers, nilpotency and abelian
invariants.  Everything here enumerates elements and is therefore guarded by
configurable order caps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .groups import (
    AbelianShape,
    CapExceeded,
    Element,
    Group,
    InternalInconsistency,
    _quotient_trusted,
)

CENSUS_CAP = 2**12
BRUTE_FORCE_CAP = 2**10

AlphaValue = Fraction


@dataclass(frozen=True)
class OrderProfile:
    """Element-order statistics: counts[d] is the number of elements of order d."""

    counts: dict[int, int]
    exponent: int
    involutions: int


@dataclass(frozen=True)
class CyclicCensus:
    """Cyclic-subgroup census: counts[d] is the number of cyclic subgroups of order d.

    The total carries the trivial subgroup, and the ratio total/order is kept
    as an exact reduced rational.
    """

    counts: dict[int, int]
    l1: int
    alpha: Fraction
    order: int


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if m > 1:
        result -= result // m
    return result


def _check_cap(g: Group, cap: int | None, default: int) -> None:
    limit = default if cap is None else cap
    if g.order > limit:
        raise CapExceeded(f"group order {g.order} exceeds the analysis cap {limit}")


def order_profile(g: Group, cap: int | None = None) -> OrderProfile:
    """Exhaustive element-order histogram with exponent and involution count."""
    _check_cap(g, cap, CENSUS_CAP)
    identity = g.identity
    counts: dict[int, int] = {}
    for e in g.elements():
        k = 1
        x = e
        while x != identity:
            x = g.multiply(x, e)
            k += 1
        counts[k] = counts.get(k, 0) + 1
    return OrderProfile(
        counts=counts,
        exponent=max(counts),
        involutions=counts.get(2, 0),
    )


def cyclic_census(g: Group, cap: int | None = None) -> CyclicCensus:
    """Cyclic-subgroup counts from the order profile: n_d = c_d / phi(d).

    Each cyclic subgroup of order d contains exactly phi(d) generators, so the
    division is always exact; an inexact division means the enumeration or the
    multiplication rule is broken.
    """
    profile = order_profile(g, cap=cap)
    counts: dict[int, int] = {}
    for d, c in sorted(profile.counts.items()):
        n, rem = divmod(c, euler_phi(d))
        if rem:
            raise InternalInconsistency(
                f"element count {c} for order {d} is not divisible by phi({d})"
            )
        counts[d] = n
    total = sum(counts.values())
    return CyclicCensus(counts=counts, l1=total, alpha=Fraction(total, g.order), order=g.order)


def cyclic_census_bruteforce(g: Group, cap: int | None = None) -> CyclicCensus:
    """Independent census: materialize <e> for every element and deduplicate.

    Kept deliberately separate from :func:`cyclic_census` so the two routes
    act as mutual witnesses in tests.
    """
    _check_cap(g, cap, BRUTE_FORCE_CAP)
    identity = g.identity
    subgroups: set[frozenset[Element]] = set()
    for e in g.elements():
        members = [identity]
        x = e
        while x != identity:
            members.append(x)
            x = g.multiply(x, e)
        subgroups.add(frozenset(members))
    counts: dict[int, int] = {}
    for s in subgroups:
        counts[len(s)] = counts.get(len(s), 0) + 1
    counts = dict(sorted(counts.items()))
    total = len(subgroups)
    return CyclicCensus(counts=counts, l1=total, alpha=Fraction(total, g.order), order=g.order)


def involutions(g: Group) -> tuple[Element, ...]:
    """All elements of order 2, in sorted encoding order."""
    identity = g.identity
    return tuple(
        e for e in sorted(g.elements()) if e != identity and g.multiply(e, e) == identity
    )


def generated_subgroup(g: Group, gens) -> tuple[Element, ...]:
    """Least subgroup containing the generators, as a sorted element tuple.

    Worklist closure under right multiplication by generators; inverses come
    for free in a finite group.
    """
    gen_list = []
    for e in gens:
        e = tuple(e)
        if not g.contains(e):
            raise ValueError(f"generator {e!r} is not in the group")
        gen_list.append(e)
    seen = {g.identity}
    frontier = [g.identity]
    while frontier:
        fresh = []
        for x in frontier:
            for gen in gen_list:
                y = g.multiply(x, gen)
                if y not in seen:
                    seen.add(y)
                    fresh.append(y)
        frontier = fresh
    return tuple(sorted(seen))


def _inverse_table(g: Group) -> dict[Element, Element]:
    return {e: g.invert(e) for e in g.elements()}


def commutator_subgroup(g: Group, cap: int | None = None) -> tuple[Element, ...]:
    """Subgroup generated by all commutators a^-1 b^-1 a b.

    Scans unordered pairs only: reversed commutators are inverses, so they
    generate the same subgroup.
    """
    _check_cap(g, cap, CENSUS_CAP)
    if g.is_abelian:
        return (g.identity,)
    inv = _inverse_table(g)
    elems = g.elements()
    commutators = set()
    for i, a in enumerate(elems):
        ainv = inv[a]
        for b in elems[i + 1 :]:
            c = g.multiply(g.multiply(inv[b], ainv), g.multiply(b, a))
            commutators.add(c)
    commutators.discard(g.identity)
    return generated_subgroup(g, sorted(commutators))


def frattini_pgroup(g: Group, p: int, cap: int | None = None) -> tuple[Element, ...]:
    """Frattini subgroup of a p-group via the closure of commutators and p-th powers."""
    _check_cap(g, cap, CENSUS_CAP)
    n = g.order
    while n % p == 0:
        n //= p
    if n != 1:
        raise ValueError(f"group of order {g.order} is not a {p}-group")
    gens = set(commutator_subgroup(g, cap=cap))
    for e in g.elements():
        gens.add(g.power(e, p))
    return generated_subgroup(g, sorted(gens))


def center(g: Group, cap: int | None = None) -> tuple[Element, ...]:
    """Elements commuting with everything, as a sorted tuple."""
    _check_cap(g, cap, CENSUS_CAP)
    elems = g.elements()
    if g.is_abelian:
        return tuple(sorted(elems))
    central = [
        e
        for e in elems
        if all(g.multiply(e, h) == g.multiply(h, e) for h in elems)
    ]
    return tuple(sorted(central))


def is_nilpotent(g: Group, cap: int | None = None) -> bool:
    """Whether the upper central series reaches the whole group.

    Computed by repeatedly quotienting by the center; the series stalls
    exactly when some quotient has trivial center.
    """
    _check_cap(g, cap, CENSUS_CAP)
    q = g
    while q.order > 1:
        c = center(q, cap=cap)
        if len(c) == 1:
            return False
        # The center is closed and normal by construction.
        q = _quotient_trusted(q, frozenset(c))
    return True


def abelian_invariants(a: Group, cap: int | None = None) -> dict[int, AbelianShape]:
    """Partition of exponents per prime for an abelian group.

    Recovered from the counts s_i of solutions of g^(p^i) = identity: the
    successive ratios s_i/s_{i-1} are p-powers whose exponents form the
    conjugate of the sought partition.
    """
    _check_cap(a, cap, CENSUS_CAP)
    if not a.is_abelian:
        raise ValueError("abelian invariants are defined for abelian groups only")
    shapes: dict[int, AbelianShape] = {}
    for p in _prime_factors(a.order):
        p_part = 1
        n = a.order
        while n % p == 0:
            n //= p
            p_part *= p
        identity = a.identity
        powers = list(a.elements())
        s_prev = 1
        ranks = []
        while s_prev < p_part:
            powers = [a.power(e, p) for e in powers]
            s = sum(1 for e in powers if e == identity)
            ratio, rem = divmod(s, s_prev)
            rank = 0
            while ratio % p == 0:
                ratio //= p
                rank += 1
            if rem or ratio != 1:
                raise InternalInconsistency(
                    f"torsion count ratio {s}/{s_prev} is not a power of {p}"
                )
            ranks.append(rank)
            s_prev = s
        k = ranks[0]
        partition = tuple(
            sorted(sum(1 for r in ranks if r >= j) for j in range(1, k + 1))
        )
        shapes[p] = AbelianShape(p=p, partition=partition)
    return shapes


def abelian_invariants_2group(a: Group) -> tuple[int, ...]:
    """Exponent partition of an abelian 2-group (convenience accessor)."""
    shapes = abelian_invariants(a)
    if set(shapes) != {2}:
        raise ValueError(f"group of order {a.order} is not a 2-group")
    return shapes[2].partition


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out
