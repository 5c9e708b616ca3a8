"""The 2x2 computation: A..H, the determinant M, the W_1 factorization,
linear Darboux polynomials and the new constant theta.

Write X^(r) = P_r X, so P_0 = I, P_1 = f and P_(r+1) = P_r' + P_r f.  Then
P_2 = [[A, B], [E, F]] and P_3 = [[C, D], [G, H]], and the wronskian of
(X11, X12, X21, X22) is the product of the 4x4 matrix with rows
vec(P_0), ..., vec(P_3) and the block matrix diag(X, X).  Its determinant
is M * det[X]^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

from .darboux import darboux_cofactor, is_constant
from .diffring import DiffPoly, dp_derive
from .linalg import DeterminantMismatch, det_cofactor, det_dodgson, nullspace
from .matring import (
    DerivationSpec,
    RPoly,
    _as_matrix,
    det_x,
    x_var,
)
from .scalar import QQ, ZERO, FieldConfig, Scalar, scalar_derive
from .wronskian import wronskian_det, wronskian_matrix


class ABCDEFGH(NamedTuple):
    A: object
    B: object
    C: object
    D: object
    E: object
    F: object
    G: object
    H: object


def _second_third(f, d: Callable) -> ABCDEFGH:
    """A..H from the recursion, for entries in any differential ring."""
    f11, f12 = f[0]
    f21, f22 = f[1]
    A = d(f11) + f11 * f11 + f12 * f21
    B = d(f12) + f11 * f12 + f12 * f22
    E = d(f21) + f21 * f11 + f22 * f21
    F = d(f22) + f12 * f21 + f22 * f22
    C = f11 * A + f21 * B + d(A)
    D = f12 * A + f22 * B + d(B)
    G = f11 * E + f21 * F + d(E)
    H = f22 * F + f12 * E + d(F)
    return ABCDEFGH(A, B, C, D, E, F, G, H)


def _check_2x2(f):
    mat = _as_matrix(f)
    if len(mat) != 2:
        raise ValueError("expected a 2x2 matrix")
    return mat


def abcdefgh(f, cfg: FieldConfig = QQ) -> ABCDEFGH:
    """A..H for a 2x2 matrix over F."""
    return _second_third(_check_2x2(f), lambda x: scalar_derive(x, cfg))


def abcdefgh_generic() -> ABCDEFGH:
    """A..H as differential polynomials in the Y_ij."""
    Y = [[DiffPoly.var(i, j) for j in (1, 2)] for i in (1, 2)]
    return _second_third(Y, dp_derive)


def expanded_forms(f, cfg: FieldConfig = QQ) -> Dict[str, Scalar]:
    """C, D, G, H as transcribed term by term in the printed expansions.

    C and D carry transcription slips (C lacks f12*f21*f22, D has f21*f22^2
    where f12*f22^2 belongs), so these disagree with the recursion in
    general.  They are kept for the discrepancy report.
    """
    (f11, f12), (f21, f22) = _check_2x2(f)

    def d(x):
        return scalar_derive(x, cfg)

    d11, d12, d21, d22 = d(f11), d(f12), d(f21), d(f22)
    dd11, dd12, dd21, dd22 = d(d11), d(d12), d(d21), d(d22)
    C = 3 * f11 * d11 + 2 * f11 * f12 * f21 + 2 * d12 * f21 + dd11 + f12 * d21 + f11**3
    D = (
        2 * d11 * f12 + f11**2 * f12 + f12**2 * f21 + f21 * f22**2
        + 2 * d12 * f22 + f11 * d12 + f12 * d22 + dd12 + f11 * f12 * f22
    )
    G = (
        2 * d21 * f11 + f21 * f11**2 + f22 * f21 * f11 + 2 * d22 * f21
        + f12 * f21**2 + f22**2 * f21 + dd21 + f21 * d11 + f22 * d21
    )
    H = (
        f21 * f11 * f12 + 2 * f22 * f21 * f12 + 3 * f22 * d22
        + 2 * f12 * d21 + d12 * f21 + f22**3 + dd22
    )
    return {"C": C, "D": D, "G": G, "H": H}


def expansion_discrepancies(f, cfg: FieldConfig = QQ) -> Dict[str, Tuple[Scalar, Scalar]]:
    """Printed expansions that differ from the recursion: name -> (recursion, printed)."""
    rec = abcdefgh(f, cfg)._asdict()
    return {
        name: (rec[name], val)
        for name, val in expanded_forms(f, cfg).items()
        if rec[name] != val
    }


def m_matrix(f, d: Callable) -> List[List]:
    """Rows (1, 0, 0, 1), (f11, f12, f21, f22), (A, B, E, F), (C, D, G, H)."""
    v = _second_third(f, d)
    one = f[0][0] - f[0][0] + 1
    zero = one - one
    return [
        [one, zero, zero, one],
        [f[0][0], f[0][1], f[1][0], f[1][1]],
        [v.A, v.B, v.E, v.F],
        [v.C, v.D, v.G, v.H],
    ]


def m_det(f, cfg: FieldConfig = QQ) -> Scalar:
    """M(f) by cofactor expansion and by Dodgson condensation, which must agree."""
    rows = m_matrix(_check_2x2(f), lambda x: scalar_derive(x, cfg))
    by_cofactor = det_cofactor(rows)
    by_dodgson = det_dodgson(rows, fallback=det_cofactor)
    if by_cofactor != by_dodgson:
        raise DeterminantMismatch(
            f"cofactor expansion gives {by_cofactor}, condensation gives {by_dodgson}"
        )
    return by_cofactor


def m_generic() -> DiffPoly:
    """M(Y): the same determinant with symbolic entries Y_ij."""
    Y = [[DiffPoly.var(i, j) for j in (1, 2)] for i in (1, 2)]
    return det_cofactor(m_matrix(Y, dp_derive))


def det2(f) -> Scalar:
    return f[0][0] * f[1][1] - f[0][1] * f[1][0]


def m_closed_form(f, cfg: FieldConfig = QQ, as_printed: bool = False) -> Scalar:
    """Simplified expression for M(f), valid when det f = 0.

    The printed expression has -f12*f21*(f11' - f22') where the square of
    the difference is needed; that term alone has the wrong weight.  The
    default evaluates the corrected expression, ``as_printed=True`` the
    transcription.
    """
    mat = _check_2x2(f)
    if det2(mat):
        raise ValueError("the closed form needs det f = 0")
    (f11, f12), (f21, f22) = mat

    def d(x):
        return scalar_derive(x, cfg)

    d11, d12, d21, d22 = d(f11), d(f12), d(f21), d(f22)
    dd11, dd12, dd21, dd22 = d(d11), d(d12), d(d21), d(d22)
    diag_diff = d11 - d22
    tail = diag_diff if as_printed else diag_diff * diag_diff
    common = f11 * d11 + f22 * d22 - d11 * f22 - f11 * d22
    return (
        (f22 - f11) * (d12 * dd21 - d21 * dd12)
        + (d22 - d11) * (dd12 * f21 - f12 * dd21)
        - d12 * d21 * (f11 - f22) ** 2
        - f12 * f21 * tail
        + f12 * d21 * (common + dd22 - dd11 + f12 * d21 - d12 * f21)
        + d12 * f21 * (common + dd11 - dd22 + d12 * f21 - f12 * d21)
    )


# -- W_1 ---------------------------------------------------------------------


@dataclass
class W1Factorization:
    """Outcome of comparing W_1 with M*det[X]^2.

    ``sign`` is +1 or -1 when the identity holds with nonzero sides and
    None when both sides vanish, where no sign is observable.
    """

    holds: bool
    sign: Optional[int]
    w1: RPoly
    m: object
    m_nonzero: bool

    def __bool__(self) -> bool:
        return self.holds


def x_columns(n: int = 2) -> List[RPoly]:
    """X11, X12, ..., Xnn."""
    return [x_var(n, i, j) for i in range(1, n + 1) for j in range(1, n + 1)]


def w1_factorization_check(spec: DerivationSpec, cfg: FieldConfig = QQ) -> W1Factorization:
    """W_1 = w(X11, X12, X21, X22) against M*det[X]^2.

    M is built from the coefficient matrix of the derivation: Y for the
    generic one (any Lie basis), f for a specialized one.
    """
    if spec.n != 2:
        raise ValueError("the factorization is stated for n = 2")
    report = wronskian_det(x_columns(2), spec, cfg)
    W = spec.coefficient_matrix()
    if spec.kind == "specialized":
        m = m_det(spec.f, cfg)
        m_poly = DiffPoly.const(m)
    else:
        m_poly = det_cofactor(m_matrix(W, lambda x: dp_derive(x, cfg)))
        m = m_poly
    rhs = det_x(2) ** 2 * m_poly
    w1 = report.determinant
    if not w1 and not rhs:
        return W1Factorization(True, None, w1, m, False)
    for sign in (1, -1):
        if w1 == rhs * sign:
            return W1Factorization(True, sign, w1, m, bool(m_poly))
    return W1Factorization(False, None, w1, m, bool(m_poly))


def product_identity_holds(spec: DerivationSpec, cfg: FieldConfig = QQ) -> bool:
    """Wronskian matrix of the X's equals (rows vec P_r) * diag(X, X) entrywise."""
    if spec.n != 2:
        raise ValueError("n must be 2")
    wm = wronskian_matrix(x_columns(2), spec, cfg)
    rows = m_matrix(spec.coefficient_matrix(), lambda x: dp_derive(x, cfg))
    X = [[x_var(2, i, j) for j in (1, 2)] for i in (1, 2)]
    zero = RPoly(2)
    block = [
        [X[0][0], X[0][1], zero, zero],
        [X[1][0], X[1][1], zero, zero],
        [zero, zero, X[0][0], X[0][1]],
        [zero, zero, X[1][0], X[1][1]],
    ]
    for r in range(4):
        for c in range(4):
            entry = zero
            for k in range(4):
                if rows[r][k] and block[k][c]:
                    entry = entry + block[k][c] * rows[r][k]
            if entry != wm[r][c]:
                return False
    return True


# -- linear Darboux polynomials and theta -------------------------------------


class LinearDarboux(NamedTuple):
    p: RPoly
    q: Scalar
    coefficients: Tuple[Scalar, Scalar, Scalar]


def linear_system(f, q: Scalar, beta12=None, beta22=None) -> List[List[Scalar]]:
    """Rows of the homogeneous system in (a, b, c) for p = a*X12 + b*X21 + c*X22.

    Without beta's the X_ij are independent and D(p) = q*p splits into one
    equation per X_ij.  With a dependence X11 = b12*X12 + b21*X21 + b22*X22
    the X11 term is rewritten and only three equations remain.
    """
    (f11, f12), (f21, f22) = _check_2x2(f)
    q = Scalar(q)
    if beta12 is None:
        return [
            [ZERO, f21, ZERO],
            [f11 - q, ZERO, f21],
            [ZERO, f22 - q, ZERO],
            [f12, ZERO, f22 - q],
        ]
    b12, b22 = Scalar(beta12), Scalar(beta22 if beta22 is not None else 0)
    return [
        [f11 - q, f21 * b12, f21],
        [ZERO, f22 + f21 * b12 - q, ZERO],
        [f12, f21 * b22, f22 - q],
    ]


def cofactor_candidates(f, beta12=None) -> List[Scalar]:
    """tr f and 0, plus f22 + f21*beta12 when beta12 is given; duplicates dropped."""
    (f11, _), (f21, f22) = _check_2x2(f)
    cands = [f11 + f22, ZERO]
    if beta12 is not None:
        cands.append(f22 + f21 * Scalar(beta12))
    out = []
    for q in cands:
        if q not in out:
            out.append(q)
    return out


def find_linear_darboux(
    f, cfg: FieldConfig = QQ, beta12=None, beta22=None
) -> List[LinearDarboux]:
    """Nonzero p = a*X12 + b*X21 + c*X22 with D(p) = q*p under D(X) = f*X.

    For each candidate q the linear system is solved exactly; every
    nullspace vector is kept only if the cofactor check confirms it.
    """
    mat = _check_2x2(f)
    if det2(mat):
        raise ValueError("this construction assumes det f = 0")
    spec = DerivationSpec.specialized(mat)
    found = []
    for q in cofactor_candidates(mat, beta12):
        rows = linear_system(mat, q, beta12, beta22)
        for a, b, c in nullspace(rows, 3, Scalar(1)):
            p = x_var(2, 1, 2) * a + x_var(2, 2, 1) * b + x_var(2, 2, 2) * c
            got = darboux_cofactor(p, spec, cfg)
            if got is not None and got == DiffPoly.const(q):
                found.append(LinearDarboux(p, q, (a, b, c)))
    return found


@dataclass
class ThetaOutcome:
    """theta = numerator/denominator, or a reason code when unavailable.

    Reason codes: "nonconstant_f", "det_nonzero", "f22_zero",
    "not_constant" (construction ran but D(theta) != 0).
    """

    numerator: Optional[RPoly]
    denominator: Optional[RPoly]
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.reason is None


def theta_numerator(f) -> RPoly:
    (_, _), (f21, f22) = _check_2x2(f)
    return x_var(2, 1, 2) * (f21 / f22) + x_var(2, 2, 2)


def theta_constant(f, cfg: FieldConfig = QQ) -> ThetaOutcome:
    """theta = (f21/f22*X12 + X22)/det[X], checked to satisfy D(theta) = 0."""
    mat = _check_2x2(f)
    if not all(x.is_constant() for row in mat for x in row):
        return ThetaOutcome(None, None, "nonconstant_f")
    if det2(mat):
        return ThetaOutcome(None, None, "det_nonzero")
    if not mat[1][1]:
        return ThetaOutcome(None, None, "f22_zero")
    num = theta_numerator(mat)
    den = det_x(2)
    if not is_constant(num, den, DerivationSpec.specialized(mat), cfg):
        return ThetaOutcome(None, None, "not_constant")
    return ThetaOutcome(num, den)
