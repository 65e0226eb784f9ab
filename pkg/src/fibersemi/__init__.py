"""Exact computation with singular endomorphism semigroups over small prime
fields: subspace and annihilator categories, normal cones, cross-connection
semigroups and the amalgams attached to bundle fibers."""

from .gf import (
    Endo,
    GuardExceeded,
    LinearMap,
    Subspace,
    annihilator,
    complement,
    complement_in,
    endo,
    enumerate_automorphisms,
    enumerate_endos,
    enumerate_subspaces,
    gaussian_binomial,
    identity_endo,
    image_and_kernel,
    is_direct_sum,
    singular_count,
    subspace_intersection,
    subspace_span,
    subspace_sum,
    transpose,
    zero_endo,
    zero_subspace,
)
from .semigroups import (
    Amalgam,
    FiniteSemigroup,
    GreenStructure,
    NotAssociative,
    SemigroupMorphism,
    amalgam_to_json,
    build_left_ideal_category,
    eggbox_export,
    from_multiplication,
    from_table,
    green_relations,
    idempotents,
    is_regular,
    null_semigroup_fixture,
    principal_ideals,
    semigroup_from_json,
    verify_amalgam,
    verify_morphism,
)
from .subspace_category import (
    Cone,
    NormalFactorization,
    SubspaceCategory,
    build_category,
    cone_compose,
    cone_star,
    enumerate_normal_cones,
    identity_cone,
    m_set,
    normal_factorization,
    principal_cone,
    retraction,
    validate_cone,
)
from .annihilators import (
    AnnihilatorCategory,
    DualObjectTag,
    build_annihilator_category,
    build_ta_semigroup,
    iso_to_dual_subspace_category,
    normal_dual_object,
)
from .crossconn import (
    CrossConnection,
    CrossConnSemigroup,
    LinkedPair,
    bifunctor_sets,
    build_cross_conn_semigroup,
    cross_connection,
    linking_bijection,
    verify_cross_connection,
)
from .bundles import (
    BundleAmalgam,
    FiberFamilySpec,
    assemble_amalgam,
    block_embed,
    build_core,
    fiber_family,
)

__version__ = "0.1.0"
