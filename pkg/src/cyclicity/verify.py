"""Verification campaigns and exploration scans.

Each campaign enumerates a family of constructed groups, checks the expected
membership or counting statement on every member, and returns a report whose
counterexample descriptors reparse to groups reproducing the failure.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import descriptors, formulas, groups
from .census import (
    CENSUS_CAP,
    abelian_invariants_2group,
    commutator_subgroup,
    cyclic_census,
    cyclic_census_bruteforce,
    frattini_pgroup,
    involutions,
    is_nilpotent,
    order_profile,
)
from .formulas import FamilyKind, l1_abelian, partitions
from .groups import AbelianShape, CapExceeded, Group

THREE_QUARTERS = Fraction(3, 4)

DEFAULT_BRUTE_CAP = 2**8
DEFAULT_SPECTRUM_EPS = Fraction(1, 100)


@dataclass
class CampaignFailure:
    descriptor: str
    message: str


@dataclass
class CampaignReport:
    """Outcome of one verification campaign."""

    campaign: str
    parameters: dict
    groups_examined: int = 0
    checks_passed: int = 0
    failures: list[CampaignFailure] = field(default_factory=list)
    members: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class SpectrumRecord:
    descriptor: str
    order: int
    alpha: Fraction
    in_c: bool


def is_in_C(g: Group, cap: int | None = None) -> bool:
    """Exact membership test: ratio equals 3/4 and the group is nilpotent."""
    if cyclic_census(g, cap=cap).alpha != THREE_QUARTERS:
        return False
    return is_nilpotent(g, cap=cap)


def _is_ones_then(partition: tuple[int, ...], last: int) -> bool:
    return bool(partition) and partition[-1] == last and all(d == 1 for d in partition[:-1])


def _pmap(fn, items, jobs: int):
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    try:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(items) // (4 * jobs))
            return list(pool.map(fn, items, chunksize=chunk))
    except (OSError, PermissionError):  # no process support in this environment
        return [fn(item) for item in items]


@dataclass
class _ItemResult:
    descriptor: str
    checks_passed: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    members: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)


def _merge(report: CampaignReport, results) -> CampaignReport:
    for r in results:
        report.groups_examined += 1
        report.checks_passed += r.checks_passed
        report.failures.extend(CampaignFailure(d, m) for d, m in r.failures)
        report.members.extend(r.members)
        report.notes.extend(r.notes)
    return report


def _check_abelian_shape(args) -> _ItemResult:
    partition, spot_cap = args
    shape = AbelianShape(2, partition)
    desc = descriptors.shape_descriptor(partition)
    result = _ItemResult(desc)
    order = shape.order
    alpha = Fraction(l1_abelian(shape), order)
    expect_three_quarters = _is_ones_then(partition, 2)
    expect_one_half = _is_ones_then(partition, 3)
    if (alpha == THREE_QUARTERS) == expect_three_quarters:
        result.checks_passed += 1
        if expect_three_quarters:
            result.members.append(desc)
    else:
        result.failures.append((desc, f"alpha={alpha}, 3/4 classification mismatch"))
    if (alpha == Fraction(1, 2)) == expect_one_half:
        result.checks_passed += 1
    else:
        result.failures.append((desc, f"alpha={alpha}, 1/2 classification mismatch"))
    if order <= spot_cap:
        brute = cyclic_census_bruteforce(groups.build_abelian_2group(partition))
        if brute.alpha == alpha:
            result.checks_passed += 1
        else:
            result.failures.append(
                (desc, f"closed form gives {alpha} but brute force gives {brute.alpha}")
            )
    return result


def verify_abelian_classification(
    max_exponent_of_order: int,
    spot_cap: int = DEFAULT_BRUTE_CAP,
    jobs: int = 1,
) -> CampaignReport:
    """Classify all abelian 2-groups of order up to 2^max by exact ratio.

    Ratio 3/4 must occur exactly at partitions (1, ..., 1, 2) and ratio 1/2
    exactly at (1, ..., 1, 3); small shapes are additionally cross-checked by
    brute force.
    """
    start = time.perf_counter()
    report = CampaignReport(
        campaign="abelian-classification",
        parameters={"max_exponent_of_order": max_exponent_of_order, "spot_cap": spot_cap},
    )
    items = [
        (partition, spot_cap)
        for n in range(1, max_exponent_of_order + 1)
        for partition in partitions(n)
    ]
    _merge(report, _pmap(_check_abelian_shape, items, jobs))
    report.wall_time = time.perf_counter() - start
    return report


def verify_member_structure(g: Group, descriptor: str = "?") -> CampaignReport:
    """Structural check for a group with ratio exactly 3/4.

    The group must be a 2-group and satisfy: commutator subgroup equals the
    Frattini subgroup, or the quotient by the commutator subgroup has shape
    (1, ..., 1, 2) with an elementary abelian commutator subgroup.
    """
    start = time.perf_counter()
    if not is_in_C(g):
        raise ValueError("structural check applies only to groups with ratio exactly 3/4")
    report = CampaignReport(campaign="member-structure", parameters={"descriptor": descriptor})
    report.groups_examined = 1
    order = g.order
    if order & (order - 1):
        report.failures.append(CampaignFailure(descriptor, f"order {order} is not a 2-power"))
        report.wall_time = time.perf_counter() - start
        return report
    report.checks_passed += 1
    derived = commutator_subgroup(g)
    frattini = frattini_pgroup(g, 2)
    equal_subgroups = set(derived) == set(frattini)
    quot = groups.quotient(g, derived)
    invariants = abelian_invariants_2group(quot)
    elementary = all(g.multiply(e, e) == g.identity for e in derived)
    shaped = _is_ones_then(invariants, 2) and elementary
    if equal_subgroups:
        report.notes.append(f"{descriptor}: commutator subgroup equals Frattini subgroup")
    if shaped:
        report.notes.append(
            f"{descriptor}: abelianization has shape {invariants},"
            " commutator subgroup is elementary abelian"
        )
    if equal_subgroups or shaped:
        report.checks_passed += 1
    else:
        report.failures.append(
            CampaignFailure(
                descriptor,
                f"neither disjunct holds: abelianization shape {invariants},"
                f" elementary commutator subgroup: {elementary}",
            )
        )
    report.wall_time = time.perf_counter() - start
    return report


def verify_involution_criterion(g: Group, descriptor: str = "?") -> CampaignReport:
    """Involution-count criterion for 2-groups of exponent 4.

    Membership (ratio 3/4 and nilpotent) must be equivalent to having
    2^(n-1) - 1 involutions, and to having 2^(n-2) cyclic subgroups of
    order 4.
    """
    start = time.perf_counter()
    profile = order_profile(g)
    order = g.order
    n = order.bit_length() - 1
    if order < 4 or 2**n != order:
        raise ValueError(f"order {order} is not a 2-power of exponent-4 range")
    if profile.exponent != 4:
        raise ValueError(f"criterion applies to exponent-4 groups, got exponent {profile.exponent}")
    report = CampaignReport(campaign="involution-criterion", parameters={"descriptor": descriptor})
    report.groups_examined = 1
    member = is_in_C(g)
    if member:
        report.members.append(descriptor)
    expected_involutions = 2 ** (n - 1) - 1
    if (profile.involutions == expected_involutions) == member:
        report.checks_passed += 1
    else:
        report.failures.append(
            CampaignFailure(
                descriptor,
                f"membership={member} but involutions={profile.involutions}"
                f" (criterion value {expected_involutions})",
            )
        )
    n4 = cyclic_census(g).counts.get(4, 0)
    if (n4 == 2 ** (n - 2)) == member:
        report.checks_passed += 1
    else:
        report.failures.append(
            CampaignFailure(
                descriptor,
                f"membership={member} but n4={n4} (criterion value {2 ** (n - 2)})",
            )
        )
    report.wall_time = time.perf_counter() - start
    return report


def _check_extraspecial_item(args) -> _ItemResult:
    desc, expect_member, cap = args
    g = descriptors.build_from_descriptor(desc)
    result = _ItemResult(desc)
    c = cyclic_census(g, cap=cap)
    member = c.alpha == THREE_QUARTERS and is_nilpotent(g, cap=cap)
    result.notes.append(f"{desc}: alpha={c.alpha}")
    if member == expect_member:
        result.checks_passed += 1
        if member:
            result.members.append(desc)
    else:
        result.failures.append(
            (desc, f"expected membership {expect_member}, got alpha={c.alpha}")
        )
    if expect_member and c.alpha != THREE_QUARTERS:
        result.failures.append((desc, f"alpha={c.alpha} is not exactly 3/4"))
    return result


def _check_dicyclic_item(args) -> _ItemResult:
    partition, cap = args
    base_desc = descriptors.shape_descriptor(partition)
    result = _ItemResult(f"Dic({base_desc})")
    base = groups.build_abelian_2group(partition)
    base_census = cyclic_census(base, cap=cap)
    elementary = _is_ones_then(partition, 1)
    if (base_census.l1 == base.order) == elementary:
        result.checks_passed += 1
    else:
        result.failures.append(
            (base_desc, f"cyclic count {base_census.l1} vs order {base.order} mismatch")
        )
    n = base.order.bit_length()  # dicyclic group order is 2^n
    seen_l1: set[int] = set()
    for index, z in enumerate(involutions(base)):
        desc = f"Dic({base_desc}, {index})"
        dic = groups.build_generalized_dicyclic(base, z)
        c = cyclic_census(dic, cap=cap)
        seen_l1.add(c.l1)
        member = c.alpha == THREE_QUARTERS and is_nilpotent(dic, cap=cap)
        if member == elementary:
            result.checks_passed += 1
            if member:
                result.members.append(desc)
        else:
            result.failures.append(
                (desc, f"expected membership {elementary}, got alpha={c.alpha}")
            )
        if c.l1 == formulas.l1_dicyclic(base_census.l1, n):
            result.checks_passed += 1
        else:
            result.failures.append(
                (desc, f"census total {c.l1} differs from closed form")
            )
        if elementary:
            invariants = abelian_invariants_2group(dic)
            if _is_ones_then(invariants, 2):
                result.checks_passed += 1
            else:
                result.failures.append((desc, f"abelian invariants {invariants}"))
    if len(seen_l1) > 1:
        result.notes.append(
            f"Dic({base_desc}): cyclic count varies with the chosen involution: {sorted(seen_l1)}"
        )
    return result


def _check_gen_dihedral_item(args) -> _ItemResult:
    partition, cap = args
    base_desc = descriptors.shape_descriptor(partition)
    desc = f"Dih({base_desc})"
    result = _ItemResult(desc)
    base = groups.build_abelian_2group(partition)
    base_census = cyclic_census(base, cap=cap)
    expect_member = _is_ones_then(partition, 3)
    if (base_census.alpha == Fraction(1, 2)) == expect_member:
        result.checks_passed += 1
    else:
        result.failures.append(
            (base_desc, f"base alpha={base_census.alpha}, shape-1/2 equivalence fails")
        )
    dih = groups.build_generalized_dihedral(base)
    c = cyclic_census(dih, cap=cap)
    member = c.alpha == THREE_QUARTERS and is_nilpotent(dih, cap=cap)
    if member == expect_member:
        result.checks_passed += 1
        if member:
            result.members.append(desc)
    else:
        result.failures.append((desc, f"expected membership {expect_member}, got alpha={c.alpha}"))
    if c.l1 == formulas.l1_gen_dihedral(base_census.l1, base.order):
        result.checks_passed += 1
    else:
        result.failures.append((desc, f"census total {c.l1} differs from closed form"))
    if expect_member:
        ones = len(partition) - 1
        reference_desc = f"Z2^{ones} x D16" if ones else "D16"
        reference = descriptors.build_from_descriptor(reference_desc)
        if cyclic_census(reference, cap=cap).counts == c.counts:
            result.checks_passed += 1
        else:
            result.failures.append(
                (desc, f"census differs from {reference_desc}")
            )
    return result


_MAXIMAL_CYCLIC_ATOMS = {
    FamilyKind.MODULAR: "M",
    FamilyKind.DIHEDRAL: "D",
    FamilyKind.GENERALIZED_QUATERNION: "Q",
    FamilyKind.QUASI_DIHEDRAL: "SD",
}


def _check_maximal_cyclic_item(args) -> _ItemResult:
    kind_value, n, brute_cap = args
    kind = FamilyKind(kind_value)
    order = 2**n
    desc = f"{_MAXIMAL_CYCLIC_ATOMS[kind]}{order}"
    result = _ItemResult(desc)
    l1 = formulas.l1_maximal_cyclic(kind, n)
    alpha = Fraction(l1, order)
    expect_member = kind is FamilyKind.DIHEDRAL and n == 4
    if (alpha == THREE_QUARTERS) == expect_member:
        result.checks_passed += 1
        if expect_member:
            result.members.append(desc)
    else:
        result.failures.append((desc, f"alpha={alpha}, membership mismatch"))
    if order <= brute_cap:
        g = descriptors.build_from_descriptor(desc)
        brute = cyclic_census_bruteforce(g)
        if brute.l1 == l1:
            result.checks_passed += 1
        else:
            result.failures.append(
                (desc, f"closed form gives {l1} but brute force gives {brute.l1}")
            )
    return result


_FAMILY_CAMPAIGNS = {
    "extraspecial",
    "almost-extraspecial",
    "dicyclic",
    "gen-dihedral",
    "maximal-cyclic",
}


def verify_families(
    family: str,
    cap: int,
    jobs: int = 1,
    brute_cap: int = DEFAULT_BRUTE_CAP,
) -> CampaignReport:
    """Membership campaign for one constructible family up to an order cap."""
    if family not in _FAMILY_CAMPAIGNS:
        raise ValueError(f"unknown family campaign {family!r}; choose from {sorted(_FAMILY_CAMPAIGNS)}")
    if family == "maximal-cyclic":
        if cap > groups.ORDER_CAP:
            raise CapExceeded(f"cap {cap} exceeds the order cap {groups.ORDER_CAP}")
    elif cap > CENSUS_CAP:
        raise CapExceeded(f"cap {cap} exceeds the census cap {CENSUS_CAP}")
    start = time.perf_counter()
    report = CampaignReport(campaign=family, parameters={"cap": cap, "brute_cap": brute_cap})
    if family in {"extraspecial", "almost-extraspecial"}:
        items = []
        r = 1
        while True:
            if family == "extraspecial":
                order = 2 ** (2 * r + 1)
                if order > cap:
                    break
                items.append((f"ES+({order})", False, cap))
                items.append((f"ES-({order})", False, cap))
            else:
                order = 2 ** (2 * r + 2)
                if order > cap:
                    break
                items.append((f"AES({order})", True, cap))
            r += 1
        _merge(report, _pmap(_check_extraspecial_item, items, jobs))
    elif family == "dicyclic":
        items = [
            (partition, cap)
            for k in range(1, cap.bit_length())
            if 2 ** (k + 1) <= cap
            for partition in partitions(k)
        ]
        _merge(report, _pmap(_check_dicyclic_item, items, jobs))
    elif family == "gen-dihedral":
        items = [
            (partition, cap)
            for k in range(1, cap.bit_length())
            if 2 ** (k + 1) <= cap
            for partition in partitions(k)
        ]
        _merge(report, _pmap(_check_gen_dihedral_item, items, jobs))
    else:
        items = [
            (kind.value, n, brute_cap)
            for kind in FamilyKind
            for n in range(kind.min_n, cap.bit_length())
            if 2**n <= cap
        ]
        _merge(report, _pmap(_check_maximal_cyclic_item, items, jobs))
    report.wall_time = time.perf_counter() - start
    return report


def injectivity_scan(p: int, n: int) -> CampaignReport:
    """Scan all abelian p-group shapes of order p^n for equal cyclic counts.

    A collision pair would be a disproof of injectivity, so collisions are
    reported as failures but flagged as findings rather than bugs.
    """
    if n > 40:
        raise CapExceeded(f"partition scan for n={n} exceeds the feasibility bound 40")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    start = time.perf_counter()
    report = CampaignReport(campaign="alpha-injectivity", parameters={"p": p, "n": n})
    seen: dict[int, tuple[int, ...]] = {}
    for partition in partitions(n):
        report.groups_examined += 1
        value = l1_abelian(AbelianShape(p, partition))
        other = seen.get(value)
        if other is None:
            seen[value] = partition
            report.checks_passed += 1
        else:
            desc = descriptors.shape_descriptor(partition, p=p)
            other_desc = descriptors.shape_descriptor(other, p=p)
            report.failures.append(
                CampaignFailure(
                    desc,
                    f"same cyclic count {value} as {other_desc}; finding, not a bug",
                )
            )
    report.notes.append(f"{report.groups_examined} partitions of {n} examined for p={p}")
    report.wall_time = time.perf_counter() - start
    return report


def _extraspecial_spectrum(max_order: int):
    # Closed-form chains: involution counts follow the central-product
    # recurrence from the seed factors D8, Q8 and Z4.  The Z4 seed itself is
    # abelian and is not emitted.
    chains = [("ES+", 5, 7, 3, True), ("ES-", 1, 5, 3, True), ("AES", 1, 3, 2, False)]
    for family, n2, l1, n, emit_seed in chains:
        if emit_seed and 2**n <= max_order:
            yield SpectrumRecord(
                descriptor=f"{family}({2 ** n})",
                order=2**n,
                alpha=Fraction(l1, 2**n),
                in_c=Fraction(l1, 2**n) == THREE_QUARTERS,
            )
        n += 2
        while 2**n <= max_order:
            n2, n4 = formulas.central_product_counts(n, n2)
            l1 = 1 + n2 + n4
            yield SpectrumRecord(
                descriptor=f"{family}({2 ** n})",
                order=2**n,
                alpha=Fraction(l1, 2**n),
                in_c=Fraction(l1, 2**n) == THREE_QUARTERS,
            )
            n += 2


def alpha_spectrum(max_order: int, eps: Fraction = DEFAULT_SPECTRUM_EPS) -> list[SpectrumRecord]:
    """Exact ratios over every constructible family with order up to the cap.

    Returns one record per family member, sorted by ratio; all members are
    2-groups, hence nilpotent, so membership reduces to the exact 3/4 test.
    The eps parameter only controls the near-3/4 annotation in notes produced
    by :func:`spectrum_summary`.
    """
    if max_order > groups.ORDER_CAP:
        raise CapExceeded(f"cap {max_order} exceeds the order cap {groups.ORDER_CAP}")
    records: dict[str, SpectrumRecord] = {}

    def add(descriptor: str, order: int, l1: int) -> None:
        alpha = Fraction(l1, order)
        records.setdefault(
            descriptor,
            SpectrumRecord(descriptor, order, alpha, alpha == THREE_QUARTERS),
        )

    for total in range(1, max_order.bit_length()):
        if 2**total > max_order:
            break
        for partition in partitions(total):
            shape = AbelianShape(2, partition)
            add(descriptors.shape_descriptor(partition), shape.order, l1_abelian(shape))
            if 2 ** (total + 1) <= max_order:
                base_l1 = l1_abelian(shape)
                add(
                    f"Dic({descriptors.shape_descriptor(partition)})",
                    2 ** (total + 1),
                    formulas.l1_dicyclic(base_l1, total + 1),
                )
                add(
                    f"Dih({descriptors.shape_descriptor(partition)})",
                    2 ** (total + 1),
                    formulas.l1_gen_dihedral(base_l1, 2**total),
                )
    for kind in FamilyKind:
        n = kind.min_n
        while 2**n <= max_order:
            add(
                f"{_MAXIMAL_CYCLIC_ATOMS[kind]}{2 ** n}",
                2**n,
                formulas.l1_maximal_cyclic(kind, n),
            )
            n += 1
    for record in _extraspecial_spectrum(max_order):
        records.setdefault(record.descriptor, record)
    return sorted(records.values(), key=lambda r: (r.alpha, r.order, r.descriptor))


def spectrum_summary(records: list[SpectrumRecord], eps: Fraction = DEFAULT_SPECTRUM_EPS) -> dict:
    """Distinct ratios and the members within eps of 3/4."""
    distinct = sorted({r.alpha for r in records})
    near = [r for r in records if abs(r.alpha - THREE_QUARTERS) <= eps]
    return {
        "records": len(records),
        "distinct_alphas": distinct,
        "near_three_quarters": near,
        "eps": eps,
    }
