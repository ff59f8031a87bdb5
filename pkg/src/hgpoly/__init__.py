"""Recurrence-defined orthogonal polynomial families H and G.

Evaluation of both families, their monic recurrence data, truncated
Jacobi-operator spectra with Gauss weights, the entire limit function of the
reversed H-family polynomials, and Wilson/Jacobi reference families for
numerical certification.
"""

from .ddouble import DoubleDouble
from .params import (
    DegenerateRecurrenceError,
    Family1Params,
    Family2Params,
    InvalidParameterError,
)
from .recurrence import (
    Family1Coeffs,
    Family2Coeffs,
    LeadingRatio,
    MonicCoeffs,
    TailBounds,
    eval_G,
    eval_H,
    eval_monic,
    f1_tail_bounds,
    leading_ratio,
    monic_coeffs,
    monic_value_table,
)
from .spectral import (
    EigensolverError,
    OperatorStructureError,
    SpectralData,
    TraceDiagnostic,
    TridiagonalOperator,
    bisection_zeros,
    build_operator,
    eigensystem,
    eigenvalues,
    quadrature_check,
    trace_diagnostic,
    zeros,
)
from .qlimit import (
    GronwallEnvelope,
    QCoeffTable,
    QZeroMatch,
    RadiusNotCertifiedError,
    ZeroBracketError,
    eval_Q_limit,
    eval_Qn,
    eval_Qn_sequence,
    gronwall_envelope,
    q_coeff_table,
    q_series_route,
    q_zero_spectrum_check,
    refine_q_zero,
)
from .reference import (
    FROZEN_WILSON_CONVENTION,
    JacobiCoeffs,
    JacobiParams,
    WilsonParams,
    monic_jacobi_coeffs,
    monic_jacobi_eval,
    pochhammer,
    wilson_eval,
    wilson_identity_value,
    wilson_params_from,
)

__version__ = "0.1.0"

__all__ = [
    "DoubleDouble",
    "DegenerateRecurrenceError",
    "Family1Params",
    "Family2Params",
    "InvalidParameterError",
    "Family1Coeffs",
    "Family2Coeffs",
    "LeadingRatio",
    "MonicCoeffs",
    "TailBounds",
    "eval_G",
    "eval_H",
    "eval_monic",
    "f1_tail_bounds",
    "leading_ratio",
    "monic_coeffs",
    "monic_value_table",
    "EigensolverError",
    "OperatorStructureError",
    "SpectralData",
    "TraceDiagnostic",
    "TridiagonalOperator",
    "bisection_zeros",
    "build_operator",
    "eigensystem",
    "eigenvalues",
    "quadrature_check",
    "trace_diagnostic",
    "zeros",
    "GronwallEnvelope",
    "QCoeffTable",
    "QZeroMatch",
    "RadiusNotCertifiedError",
    "ZeroBracketError",
    "eval_Q_limit",
    "eval_Qn",
    "eval_Qn_sequence",
    "gronwall_envelope",
    "q_coeff_table",
    "q_series_route",
    "q_zero_spectrum_check",
    "refine_q_zero",
    "FROZEN_WILSON_CONVENTION",
    "JacobiCoeffs",
    "JacobiParams",
    "WilsonParams",
    "monic_jacobi_coeffs",
    "monic_jacobi_eval",
    "pochhammer",
    "wilson_eval",
    "wilson_identity_value",
    "wilson_params_from",
    "__version__",
]
