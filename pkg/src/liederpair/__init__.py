"""Exact computations for Lie algebras equipped with a derivation.

The package works entirely over the rationals with structure constants as
input: cohomology of the pair complex, truncated formal deformations with
their obstruction theory, central extensions and derivation lifting, and the
correspondence with skeletal 2-term homotopy Lie algebras.
"""

from .cochains import (
    Cochain,
    CochainPair,
    WedgeBasis,
    bracket_cochain,
    ce_d,
    cochain_to_matrix,
    delta_op,
    derivation_cochain,
    identity_cochain,
    lieder_partial,
    matrix_to_cochain,
    nr_bracket,
    nr_circle,
    wedge_basis,
)
from .cohomology import (
    CohomologyReport,
    NotACocycleError,
    ce_cohomology,
    d_matrix,
    delta_matrix,
    is_coboundary,
    lieder_cohomology,
    lieder_dim,
    partial_matrix,
    plain_dim,
)
from .core import (
    Derivation,
    LieAlgebra,
    LieDerPair,
    LieDerRepresentation,
    Report,
    Violation,
    adjoint_representation,
    pair_morphism_report,
    semidirect_product,
    trivial_representation,
    verify_derivation,
    verify_lie,
    verify_representation,
)
from .deformation import (
    FormalIso,
    TruncatedDeformation,
    apply_iso,
    check_deformation,
    extend_deformation,
    infinitesimal,
    obstruction,
    obstruction_nr,
    trivialize,
    trivialize_report,
)
from .extension import (
    CentralCocycle,
    CentralExtension,
    CocycleConditionError,
    ThetaMap,
    build_central_extension,
    build_lie_central_extension,
    classify_central_extensions,
    derivation_pair_obstruction,
    extend_derivation_pair,
    section_to_cocycle,
    theta_apply,
    theta_map,
    verify_central_cocycle,
    verify_central_extension,
)
from .lie2 import (
    EquivalenceWitness,
    Lie2Derivation,
    SkeletalLie2,
    Triple,
    pair_to_triple,
    triple_to_pair,
    verify_equivalence_witness,
    verify_lie2der,
    verify_skeletal,
)
from .linalg import Matrix, rat, rat_str

__version__ = "0.1.0"
