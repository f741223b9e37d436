"""Numerics - 구면 조화 / MZ 샘플링 / 최소제곱 근사 / 구적 / Sobolev 실험"""
from .core_math import BasisSpec, basis_eval, basis_matrix, dim_harmonic, dim_poly, gegenbauer_eval, kernel_E
from .pointsets import (
    Layer,
    covering_grid,
    fibonacci_layer,
    gauss_product_layer,
    layer_family,
    layer_geometry,
    mesh_norm,
    min_separation,
    perturb_layer,
)
from .linalg import TallFactorization, factorize, gram_apply_inverse, lsq_solve, normal_equations_solve, sym_eig_extremes
from .mz_analysis import DesignSystem, build_design, frame_operator, verify_mz, weight_sum_bounds
from .approximation import (
    Approximant,
    christoffel,
    christoffel_upper_estimate,
    discrete_kernel,
    discrete_orthonormal_basis,
    dual_frame,
    evaluate,
    fit,
    hyperinterpolate,
    lebesgue_constant,
    lebesgue_function,
    lebesgue_refinement,
)
from .quadrature import (
    QuadratureRule,
    certify_rule,
    integrate,
    kernel_route_weights,
    lsq_weights,
    quadrature_error,
    reference_integral,
)
from .sobolev_lab import (
    ConvergenceReport,
    ZonalTestFunction,
    convergence_sweep,
    cubature_l2_error,
    lebesgue_sweep,
    lsq_error_exact,
    projection_error_exact,
    sobolev_kernel,
    sobolev_norm,
    stability_terms,
    uniform_error_report,
)

__all__ = [
    "BasisSpec", "basis_eval", "basis_matrix", "dim_harmonic", "dim_poly", "gegenbauer_eval", "kernel_E",
    "Layer", "covering_grid", "fibonacci_layer", "gauss_product_layer", "layer_family", "layer_geometry",
    "mesh_norm", "min_separation", "perturb_layer",
    "TallFactorization", "factorize", "gram_apply_inverse", "lsq_solve", "normal_equations_solve",
    "sym_eig_extremes",
    "DesignSystem", "build_design", "frame_operator", "verify_mz", "weight_sum_bounds",
    "Approximant", "christoffel", "christoffel_upper_estimate", "discrete_kernel",
    "discrete_orthonormal_basis", "dual_frame", "evaluate", "fit", "hyperinterpolate",
    "lebesgue_constant", "lebesgue_function", "lebesgue_refinement",
    "QuadratureRule", "certify_rule", "integrate", "kernel_route_weights", "lsq_weights",
    "quadrature_error", "reference_integral",
    "ConvergenceReport", "ZonalTestFunction", "convergence_sweep", "cubature_l2_error", "lebesgue_sweep",
    "lsq_error_exact", "projection_error_exact", "sobolev_kernel", "sobolev_norm", "stability_terms",
    "uniform_error_report",
]
