"""Exact cyclic-subgroup censuses and verification campaigns for finite 2-group families."""

from .census import (
    BRUTE_FORCE_CAP,
    CENSUS_CAP,
    CyclicCensus,
    OrderProfile,
    abelian_invariants,
    center,
    commutator_subgroup,
    cyclic_census,
    cyclic_census_bruteforce,
    frattini_pgroup,
    generated_subgroup,
    involutions,
    is_nilpotent,
    order_profile,
)
from .descriptors import (
    build_from_descriptor,
    canonical_key,
    canonical_string,
    canonicalize,
    parse_descriptor,
)
from .formulas import (
    AlphaValue,
    FamilyKind,
    alpha_of,
    alpha_product,
    central_product_counts,
    cyclic_count,
    l1_abelian,
    l1_dicyclic,
    l1_gen_dihedral,
    l1_maximal_cyclic,
    partitions,
    special_profile_n2_n8,
    torsion_count,
)
from .groups import (
    ORDER_CAP,
    AbelianShape,
    CapExceeded,
    Element,
    Group,
    InternalInconsistency,
    build_abelian,
    build_abelian_2group,
    build_cyclic,
    build_generalized_dicyclic,
    build_generalized_dihedral,
    build_metacyclic2,
    central_product,
    dihedral,
    direct_product,
    element_order,
    generalized_quaternion,
    modular_maximal_cyclic,
    quotient,
    semidihedral,
)
from .verify import (
    CampaignReport,
    SpectrumRecord,
    alpha_spectrum,
    injectivity_scan,
    is_in_C,
    verify_abelian_classification,
    verify_families,
    verify_involution_criterion,
    verify_member_structure,
)

__version__ = "0.1.0"
