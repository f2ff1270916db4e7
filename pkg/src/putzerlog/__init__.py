"""Principal matrix logarithm by an explicit Putzer-type polynomial formula.

``log(I - A t) = f1(t) I + f2(t) A + ... + fk(t) A**(k-1)`` where the
``fi`` are closed-form integrals of rational functions built from an
annihilating polynomial of ``A``. Independent numerical oracles (ODE,
quadrature, series, exponential) validate every result.
"""

from .closed_form import (
    ClosedFormFunction,
    RationalIntegrand,
    antiderivative,
    build_integrands,
    evaluate,
    integrate_elementary,
    partial_fractions,
    render,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    InconsistentFactorization,
    MatrixParseError,
    PrincipalLogUndefined,
    PutzerError,
    SingularMatrixError,
)
from .matrix_core import (
    as_matrix,
    inf_norm,
    linear_combination,
    mat_add,
    mat_mul,
    mat_poly_eval,
    mat_solve,
    matrix_powers,
)
from .oracles import expm, quad_integrand, series_log, solve_putzer_ivp
from .putzer_log import (
    LogResult,
    PutzerPlan,
    eval_log_curve,
    log_at_one,
    logm,
    plan,
    segment_plan,
    segment_samples,
)
from .spectral import (
    AnnihilatingPolynomial,
    DomainInterval,
    RealFactorization,
    Spectrum,
    characteristic_polynomial,
    companion_matrix,
    domain_interval,
    eigenvalues,
    factor_reciprocal,
    minimal_polynomial,
    reciprocal_polynomial,
)

__all__ = [
    "ClosedFormFunction",
    "RationalIntegrand",
    "antiderivative",
    "build_integrands",
    "evaluate",
    "integrate_elementary",
    "partial_fractions",
    "render",
    "ConvergenceError",
    "DimensionError",
    "DomainError",
    "InconsistentFactorization",
    "MatrixParseError",
    "PrincipalLogUndefined",
    "PutzerError",
    "SingularMatrixError",
    "as_matrix",
    "inf_norm",
    "linear_combination",
    "mat_add",
    "mat_mul",
    "mat_poly_eval",
    "mat_solve",
    "matrix_powers",
    "LogResult",
    "PutzerPlan",
    "eval_log_curve",
    "log_at_one",
    "logm",
    "plan",
    "segment_plan",
    "segment_samples",
    "AnnihilatingPolynomial",
    "DomainInterval",
    "RealFactorization",
    "Spectrum",
    "characteristic_polynomial",
    "companion_matrix",
    "domain_interval",
    "eigenvalues",
    "factor_reciprocal",
    "minimal_polynomial",
    "reciprocal_polynomial",
    "expm",
    "quad_integrand",
    "series_log",
    "solve_putzer_ivp",
]

__version__ = "0.1.0"
