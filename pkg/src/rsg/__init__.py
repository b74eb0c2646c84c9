"""Finite restriction semigroups, their partial actions by partial
bijections, partial action products, and proper extensions."""

from .core import (
    CongruencePartition,
    RSemigroup,
    RSMorphism,
    are_isomorphic,
    canonical_form,
    check_rsmorphism,
    compatible,
    find_isomorphism,
    is_proper,
    is_reduced,
    kernel_partition,
    natural_order,
    projections,
    sigma,
    sigma_quotient,
    trivial_monoid,
    validate_restriction,
)
from .errors import (
    AxiomViolation,
    DimensionMismatch,
    EquivalenceViolation,
    NotAMorphism,
    NotInverse,
    NotSemilatticeMorphism,
    OracleMismatch,
    ParseError,
    PMViolation,
    PreconditionFailed,
    RsgError,
    SizeLimit,
    UniversalityFailure,
)
from .partial_maps import (
    PBij,
    Semilattice,
    compatible_pbij,
    downset,
    from_inverse,
    munn_representation,
    munn_semigroup,
    projection_semilattice,
    semilattice_as_rsemigroup,
    symmetric_inverse,
    validate_semilattice,
)
from .premorphism import (
    ActionFlags,
    ActionTriple,
    LeftAction,
    Premorph,
    PremorphReport,
    RightAction,
    action_triple,
    check_action_conditions,
    check_premorphism,
    classify,
    classify_map_into,
    left_action_to_premorph,
    left_to_right_action,
    munn_triple,
    premorph_to_left_action,
    right_to_left_action,
    search_q1,
)
from .product import ProductRS, partial_action_product, projection_morphism
from .extension import (
    ExtensionReport,
    ProperExt,
    TauResult,
    classify_extension,
    decompose,
    fiber_maxima,
    identity_extension,
    is_proper_morphism,
    lower_underlying,
    proper_extension,
    sigma_extension,
    tau,
    upper_underlying,
)
from .category import (
    AMorphism,
    AObject,
    action_object,
    amorphisms_between,
    check_amorphism,
    extend_domains,
    restrict_domains,
    semilattice_morphisms,
    to_action,
    to_action_morphism,
    to_extension,
    to_extension_morphism,
    verify_adjunction_instance,
    verify_equivalence_instance,
    verify_functoriality,
    verify_roundtrip_isomorphism,
)
from .enumeration import (
    EnumConfig,
    enumerate_action_triples,
    enumerate_premorphisms,
    enumerate_proper_extensions,
    enumerate_restriction_semigroups,
    enumerate_semilattices,
)
