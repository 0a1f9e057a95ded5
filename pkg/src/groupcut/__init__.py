"""Exact rational toolkit for periodic piecewise linear cut functions."""

from .rational import Rat, RatMatrix, nullspace, rank, rat_parse, rat_str, rref
from .pwl import (
    PwlPeriodic,
    SlopeReport,
    affine_combine,
    compose_pwl,
    eval_pwl,
    limit,
    make_pwl,
    precompose_scale,
    pwl_from_values,
    slope_report,
    sup_norm_distance,
)
from .complex2d import (
    AdditivityReport,
    DeltaFace,
    FaceCountCheck,
    additivity_report,
    delta_pi,
    delta_pi_limit,
    delta_vertices,
    enumerate_faces,
    face_count_check,
)
from .minimality import (
    MinimalityVerdict,
    MinimalityWitness,
    minimality_grid_oracle,
    minimality_test,
    verify_witness,
    with_f_breakpoint,
)
from .extremality import (
    ExtremalityVerdict,
    PerturbationBasis,
    PerturbationCertificate,
    epsilon_ratio_test,
    extremality_test,
    facetness_test,
    interpolate_perturbation,
    perturbation_space_basis,
    restriction_additive_pairs,
)
from .finite import (
    FiniteExtremalityVerdict,
    FiniteGroupFn,
    finite_extremality_test,
    finite_minimality_test,
    finite_perturbation_basis,
    interpolate_to_infinite_group,
    restrict_to_finite_group,
)
from .compendium import (
    PsiParams,
    SequentialMerge,
    construct,
    generate_eps,
    gmic,
    list_registry,
    multiplicative_homomorphism,
    negation,
    projected_sequential_merge,
    psi_n,
    psi_stages,
    sequential_merge,
    two_slope_fill_in,
)

__version__ = "0.1.0"
