"""Certified discreteness for two-generator Mobius groups.

A marked pair (p, q, rho) describes the group generated by

    A = [[alpha, 1], [0, 1/alpha]],   alpha = exp(i*pi/p),
    B = [[beta, 0], [rho, 1/beta]],   beta  = exp(i*pi/q).

The package provides sufficient conditions certifying that the group is
discrete and isomorphic to the free product Z_p * Z_q (disk tests, line
families, lambda-coordinate inequalities, an imaginary-part bound), the
polygonal exclusion region Omega_{p,q} that those certificates cover,
Farey-polynomial cusp location on its boundary, and the faithfulness
certificate for specialized Burau representations of the braid group B_3.
"""

from .mobius import (
    EPS_ALG,
    EPS_GEO,
    INF_POINT,
    Disk,
    FixesInfinityError,
    GroupSpec,
    InvalidInputError,
    PreconditionError,
    SectorK,
    SharedFixedPointError,
    UndefinedFixedPointsError,
    UnsupportedError,
    det2,
    disk_meets_sector,
    fixed_points,
    gamma_of,
    generator_power,
    inv2,
    isometric_disks,
    make_generators,
    mat2c,
    mobius_apply,
    normalize_into_sector,
    pi_over,
    sigma_pq,
    sin_sin,
    symmetry_image,
    tr2,
)
from .lambda_region import (
    EnvelopeSample,
    LambdaParams,
    envelope_samples,
    lambda_boundary,
    lambda_boundary_equal_orders,
    lambda_from_rho,
    lambda_slack,
    lambda_slack_signed,
    rho_boundary,
    rho_from_lambda,
)
from .omega import (
    OmegaRegion,
    OrientedLine,
    boundary_cusps,
    build_omega,
    im_bound,
    omega_contains,
    omega_margin,
    rho_star,
    x_pq,
    xi,
)
from .certificates import (
    CODE_DISKS_ELLIPTIC,
    CODE_DISKS_GENERAL,
    CODE_IM_BOUND,
    CODE_LAMBDA,
    CODE_LINE_FAMILY,
    CODE_NONE,
    Certificate,
    VERDICT_FAITHFUL,
    VERDICT_FREE,
    VERDICT_NONE,
    WITNESS_OF_CODE,
    anchor_search,
    canonical_anchors,
    cert_combined,
    cert_disks_elliptic,
    cert_disks_general,
    cert_general_ray,
    cert_im_bound,
    cert_lambda,
    cert_line_family,
    combined_codes_array,
    disk_centers_elliptic,
    disk_slack,
    lambda_feasible,
    line_distance,
)
from .farey import FAREY_WORDS, SLOPES, cusp_residue, farey_poly, farey_word_matrix, solve_cusp
from .burau import (
    ANNULUS_CONJECTURED,
    ANNULUS_PROVED,
    AnnulusReport,
    BurauGenerators,
    BurauPoint,
    annulus_report,
    burau_generators,
    faithful_certificate,
    faithful_mask,
    is_faithful,
    mu_coordinates,
    rho_of_mu,
)

__version__ = "0.1.0"
