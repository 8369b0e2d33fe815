"""Finite-dimensional structure of surface-group representation varieties.

Exact Fox calculus on free groups, numerical twisted cohomology at a
representation, quadratic obstruction cones, orbit-type stratification,
linear momentum-map local models with Hilbert maps, and path holonomy
with its derivative formula.
"""

from surfrep.cohomology import (
    BundleClass,
    CochainData,
    ConvergenceError,
    ObstructionModel,
    RepPoint,
    build_complex,
    classify_orbit_type,
    conjugation_isomorphism_check,
    enumerate_central_reps,
    evaluate_group_ring,
    finite_diff_check_d0,
    finite_diff_check_d1,
    newton_project_to_variety,
    obstruction_quadratic,
    relator_defect,
    rep_from_name,
    sample_cone_directions,
    sample_stabilizer,
    stabilizer_fixed_subspace,
)
from surfrep.groups import (
    LieGroupModel,
    direct_product,
    group_from_name,
    so3,
    su2,
    u1,
)
from surfrep.holonomy import (
    PathConnection,
    Variation,
    conjugation_invariance_check,
    holonomy,
    holonomy_derivative,
    holonomy_derivative_fd,
    horizontal_transport,
)
from surfrep.reduction import (
    LinearMomentumModel,
    ZeroLocusPoint,
    check_relations,
    couple_invariants,
    hilbert_map,
    minors_3x3,
    momentum_so2,
    momentum_so3,
    psd_rank_stratum,
    psi_quadratic,
    sample_zero_locus,
    so2_cone_model_report,
    so2_model,
    so3_model,
    spanning_configurations,
    stratum_label,
    zariski_dim_at_origin,
)
from surfrep.words import (
    GroupRingElement,
    Presentation,
    Word,
    format_ring,
    format_word,
    fox_derivative,
    parse_word,
    reduce,
    surface_presentation,
    verify_fox_identity,
    word_invert,
    word_multiply,
)

__all__ = [
    "BundleClass",
    "CochainData",
    "ConvergenceError",
    "GroupRingElement",
    "LieGroupModel",
    "LinearMomentumModel",
    "ObstructionModel",
    "PathConnection",
    "Presentation",
    "RepPoint",
    "Variation",
    "Word",
    "ZeroLocusPoint",
    "build_complex",
    "check_relations",
    "classify_orbit_type",
    "conjugation_invariance_check",
    "conjugation_isomorphism_check",
    "couple_invariants",
    "direct_product",
    "enumerate_central_reps",
    "evaluate_group_ring",
    "finite_diff_check_d0",
    "finite_diff_check_d1",
    "format_ring",
    "format_word",
    "fox_derivative",
    "group_from_name",
    "hilbert_map",
    "holonomy",
    "holonomy_derivative",
    "holonomy_derivative_fd",
    "horizontal_transport",
    "minors_3x3",
    "momentum_so2",
    "momentum_so3",
    "newton_project_to_variety",
    "obstruction_quadratic",
    "parse_word",
    "psd_rank_stratum",
    "psi_quadratic",
    "reduce",
    "relator_defect",
    "rep_from_name",
    "sample_cone_directions",
    "sample_stabilizer",
    "sample_zero_locus",
    "so2_cone_model_report",
    "so2_model",
    "so3",
    "so3_model",
    "spanning_configurations",
    "stabilizer_fixed_subspace",
    "stratum_label",
    "su2",
    "surface_presentation",
    "u1",
    "verify_fox_identity",
    "word_invert",
    "word_multiply",
    "zariski_dim_at_origin",
]

__version__ = "0.1.0"
