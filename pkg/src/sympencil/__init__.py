"""sympencil: exact-arithmetic invariants of closed symplectic 4-manifold
lattices, Lefschetz-pencil numerology, Brill-Noether bookkeeping, and
certification of commuting-matrix models of points on a surface.

Everything is computed over the rationals (fractions.Fraction); floating
point never enters. The CLI entry point lives in :mod:`sympencil.cli`.
"""

from sympencil.applications import CheckReport, general_type_classes, run_all
from sympencil.brill_noether import (
    AbelJacobiFibres,
    BNQuery,
    abel_jacobi_fibre_dims,
    eh_predicate,
    rho,
    singular_fibre_h0,
)
from sympencil.catalog import (
    STANDARD_BUILDERS,
    elliptic_like,
    lattice_from_dict,
    lattice_to_dict,
    load_manifold,
    spin_model,
)
from sympencil.exact import (
    RationalMatrix,
    TruncatedSeries,
    binom,
    rank_and_kernel,
    series_geom_pow,
)
from sympencil.gromov import (
    CohomologyProfile,
    duality_check,
    gr_parity,
    gromov_invariant,
    riemann_roch_chi,
    serre_dual,
    vanishing_profile,
)
from sympencil.hilb import (
    ADHMTriple,
    CertificationReport,
    RelADHMQuad,
    certify_stratum,
    differential_matrix,
    is_stable,
    support_points,
    verify_absolute_cokernel,
    verify_kernel_dim,
)
from sympencil.lattice import (
    BlownUpLattice,
    BPlusOneClassification,
    FourManifoldLattice,
    HomologyClass,
    blow_up,
    classify_b_plus_one,
    is_even_form,
    minimality_inequality,
    signature_of_symmetric,
    twist,
)
from sympencil.pencil import (
    PencilData,
    SurfaceCountVerdict,
    build_pencil,
    count_decision,
    fibre_degree,
    ratio_convergence,
    residual_fibre_degree,
    virtual_dim,
)

__version__ = "0.1.0"

__all__ = [
    "ADHMTriple",
    "AbelJacobiFibres",
    "BNQuery",
    "BPlusOneClassification",
    "BlownUpLattice",
    "CertificationReport",
    "CheckReport",
    "CohomologyProfile",
    "FourManifoldLattice",
    "HomologyClass",
    "PencilData",
    "RationalMatrix",
    "RelADHMQuad",
    "STANDARD_BUILDERS",
    "SurfaceCountVerdict",
    "TruncatedSeries",
    "abel_jacobi_fibre_dims",
    "binom",
    "blow_up",
    "build_pencil",
    "certify_stratum",
    "classify_b_plus_one",
    "count_decision",
    "differential_matrix",
    "duality_check",
    "eh_predicate",
    "elliptic_like",
    "fibre_degree",
    "general_type_classes",
    "gr_parity",
    "gromov_invariant",
    "is_even_form",
    "is_stable",
    "lattice_from_dict",
    "lattice_to_dict",
    "load_manifold",
    "minimality_inequality",
    "rank_and_kernel",
    "ratio_convergence",
    "residual_fibre_degree",
    "rho",
    "riemann_roch_chi",
    "run_all",
    "serre_dual",
    "series_geom_pow",
    "signature_of_symmetric",
    "singular_fibre_h0",
    "spin_model",
    "support_points",
    "twist",
    "vanishing_profile",
    "verify_absolute_cokernel",
    "verify_kernel_dim",
    "virtual_dim",
]
