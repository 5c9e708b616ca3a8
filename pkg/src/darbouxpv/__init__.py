"""Exact differential algebra on F{Y_ij}[X_ij]: Darboux polynomials,
wronskian specialization checks and the 2x2 new-constant computation."""

from .darboux import (
    ClassificationInconsistency,
    classify_darboux,
    darboux_cofactor,
    enumerate_darboux_generic,
    fuzz_darboux_diffring,
    is_constant,
)
from .diffring import DiffPoly, DiffVar, Y, dp_derive, dp_exact_divide, dp_leader, dp_mul
from .expr import ParseError, format_expr, parse_expr
from .gl2 import (
    abcdefgh,
    find_linear_darboux,
    m_closed_form,
    m_det,
    theta_constant,
    w1_factorization_check,
)
from .linalg import DeterminantMismatch
from .matring import (
    DerivationSpec,
    RPoly,
    coeff_in_derivative,
    derivation_from_basis,
    det_x,
    diff_xmonomial,
    divide_reduce,
    leading_power_product,
    r_derive,
    specialize,
    x_var,
    xorder_compare,
)
from .scalar import QQ, FieldConfig, Scalar, scalar_arith, scalar_derive
from .wronskian import (
    MonomialBasis,
    WronskianReport,
    check_specialization,
    monomial_basis,
    wronskian_det,
)

__all__ = [
    "abcdefgh",
    "check_specialization",
    "ClassificationInconsistency",
    "classify_darboux",
    "coeff_in_derivative",
    "darboux_cofactor",
    "derivation_from_basis",
    "DerivationSpec",
    "det_x",
    "DeterminantMismatch",
    "diff_xmonomial",
    "DiffPoly",
    "DiffVar",
    "divide_reduce",
    "dp_derive",
    "dp_exact_divide",
    "dp_leader",
    "dp_mul",
    "enumerate_darboux_generic",
    "FieldConfig",
    "find_linear_darboux",
    "format_expr",
    "fuzz_darboux_diffring",
    "is_constant",
    "leading_power_product",
    "m_closed_form",
    "m_det",
    "monomial_basis",
    "MonomialBasis",
    "parse_expr",
    "ParseError",
    "QQ",
    "r_derive",
    "RPoly",
    "Scalar",
    "scalar_arith",
    "scalar_derive",
    "specialize",
    "theta_constant",
    "w1_factorization_check",
    "wronskian_det",
    "WronskianReport",
    "x_var",
    "xorder_compare",
    "Y",
]
