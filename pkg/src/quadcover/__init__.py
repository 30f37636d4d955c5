"""Numerical verification of cotangent disc bundle compactifications.

The package realizes the explicit maps, two-forms, and Hamiltonian flows of
the compactification of T*S^n and T*RP^n into quadrics and projective spaces,
and certifies every computationally checkable identity among them by seeded
sampling, finite-difference calculus, and Gauss-Legendre quadrature.
"""

from .checks import (
    CheckReport,
    SuiteConfig,
    UsageError,
    VERIFIED_STATEMENTS,
    build_registry,
    emit_report,
    run_check,
    run_suite,
)
from .cotangent import (
    CotangentPoint,
    CotangentTangent,
    antipode,
    even_rescale,
    even_rescale_inverse,
    sample_cosphere,
    sample_disc_bundle,
    tangent_basis,
)
from .dynamics import (
    FlowResult,
    HamiltonianSpec,
    ZeroSectionError,
    flow_closed_form,
    flow_uneven_cosphere,
    hamiltonian_vector_field,
    rk4_integrate,
    scalar_action,
)
from .forms import (
    BranchLocusError,
    SmoothMap,
    TwoForm,
    fubini_study_form,
    integrate_surface,
    omega_fs,
    omega_r,
    omega_std,
    pullback,
    pushed_down_form,
)
from .maps import (
    antipodal_cp1,
    ball_to_projective,
    branched_cover,
    cosphere_boundary,
    cotangent_to_quadric,
    deck,
    locus_classify,
    map_catalog,
    quadric_fiber,
    quadric_to_cotangent,
    segre_unitary,
    swap_factors,
)
from .numerics import (
    DEFAULT_PROFILE,
    ToleranceProfile,
    derive_stream,
    gauss_legendre_2d,
    jacobian,
    sample_gaussian,
)
from .projective import (
    ProjectivePoint,
    ProjectiveTangent,
    horizontal_project,
    in_hyperplane,
    proj_normalize,
    quadric_residual,
    same_point,
)

__version__ = "0.1.0"
