"""Exact arithmetic for the iterative derivation on a localized cubic
curve ring: series embeddings, the non-free rank-1 module, Picard-Vessiot
generator series, Galois classification, and mod-p reduction."""

from .curve import (
    CurveElem,
    CurveFraction,
    curve_ring,
    fraction_ring,
    residue_at_point,
    solve_theta_s,
    theta1,
    theta_series,
    theta_series_fraction,
)
from .derivations import (
    AxiomReport,
    IterativeDerivation,
    check_hom,
    check_iteration,
    constants_check,
    mutant_instances,
    standard_instances,
)
from .embedding import (
    Embedding,
    EmbeddingPoint,
    PVGenerators,
    b_star,
    build_embedding,
    check_embedding_compat,
    constant_basis_check,
    ode_coefficient,
    pv_generators,
    solve_y,
)
from .exprparse import parse_b_expression
from .galois import GaloisVerdict, SearchBounds, classify, series_in_ring
from .linalg import ExactMatrix, solve_linear
from .module import (
    ModuleElem,
    apply_derivation,
    gen_f1,
    gen_f2,
    iterate_divided,
    local_freeness_certificates,
    relation_pairs,
)
from .charp import (
    ModPModule,
    certify_dyadic_denominators,
    check_module_iteration,
    check_stability,
    first_component_nilpotent,
    reduce_module_mod_p,
    sqrt_multiplier_series,
)
from .poly import Poly, PolyRing
from .scalars import (
    GF,
    QQ,
    FpElem,
    Rational,
    denom_is_2_power,
    gen_binomial,
    is_prime,
    reduce_mod_p,
)
from .series import (
    BiTruncSeries,
    SeriesRing,
    TruncSeries,
    compose_poly,
    newton_solve,
    shift_substitute,
    sqrt_unit,
)

__version__ = "0.1.0"
