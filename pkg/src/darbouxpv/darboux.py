"""Darboux polynomials: detection, classification and brute-force oracles."""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import flint

from .diffring import DiffPoly, DiffVar, dp_derive, dp_exact_divide
from .linalg import nullspace, rref
from .matring import (
    DerivationSpec,
    RPoly,
    XMonomial,
    derivation_from_basis,
    det_x,
    determinant_cofactor,
    diff_xmonomial,
    leading_power_product,
    r_derive,
    xorder_key,
)
from .scalar import QQ, FieldConfig, Scalar, scalar_derive


class ClassificationInconsistency(ArithmeticError):
    """A Darboux polynomial that is not a scalar times a power of det[X]."""

    def __init__(self, p: RPoly, detail: str):
        super().__init__(f"Darboux polynomial {p} breaks the classification: {detail}")
        self.polynomial = p
        self.detail = detail


def darboux_cofactor(
    p: RPoly, spec: DerivationSpec, cfg: FieldConfig = QQ
) -> Optional[DiffPoly]:
    """q with D(p) = q*p, or None when p does not divide D(p).

    D preserves X-degree, so q has X-degree 0 and the leading coefficient
    of D(p) divided by that of p is the only possible candidate.
    """
    if not p:
        raise ValueError("the zero polynomial has no cofactor")
    dp = r_derive(p, spec, cfg)
    lm, lc = leading_power_product(p)
    q = dp_exact_divide(dp.coefficient(lm), lc)
    if q is None:
        return None
    if dp != p * q:
        return None
    return q


def classify_darboux(
    p: RPoly, spec: DerivationSpec, cfg: FieldConfig = QQ
) -> Optional[Tuple[Scalar, int]]:
    """(l, a) with p = l*det[X]^a for a Darboux p, None for a non-Darboux p.

    Raises :class:`ClassificationInconsistency` if p is Darboux but not of
    that shape, or if its cofactor differs from l'/l + a*tr.
    """
    if spec.kind != "generic":
        raise ValueError("classification applies to the generic derivation")
    q = darboux_cofactor(p, spec, cfg)
    if q is None:
        return None
    n = spec.n
    deg = p.x_degree()
    if not p.is_homogeneous() or deg % n:
        raise ClassificationInconsistency(p, f"not homogeneous of degree a multiple of {n}")
    a = deg // n
    lm, lc = leading_power_product(p)
    if not lc.is_constant():
        raise ClassificationInconsistency(p, "leading coefficient involves the Y's")
    ell = lc.constant_value()
    d = det_x(n) ** a
    _, dlc = leading_power_product(d)
    ell = ell / dlc.constant_value()
    if p != d * ell:
        raise ClassificationInconsistency(p, f"differs from ({ell})*det^{a}")
    expected = DiffPoly.const(scalar_derive(ell, cfg) / ell) + determinant_cofactor(spec) * a
    if q != expected:
        raise ClassificationInconsistency(p, f"cofactor {q} differs from {expected}")
    return ell, a


# -- bounded-degree oracle over Q ----------------------------------------------


def monomials_of_degree(nvars: int, d: int) -> List[XMonomial]:
    """All exponent vectors of total degree d, ascending in term order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for k in combo:
            e[k] += 1
        out.append(tuple(e))
    out.sort(key=xorder_key)
    return out


def _direction_matrices(
    spec: DerivationSpec, monos: Sequence[XMonomial]
) -> List[List[List[Fraction]]]:
    """L_st with D(X^alpha) = sum_st Y_st L_st(X^alpha), restricted to monos."""
    n = spec.n
    index = {m: k for k, m in enumerate(monos)}
    size = len(monos)
    mats = [[[Fraction(0)] * size for _ in range(size)] for _ in range(n * n)]
    for col, alpha in enumerate(monos):
        for beta, c in diff_xmonomial(alpha, spec).terms.items():
            row = index[beta]
            for ymono, s in c.terms.items():
                ((v, e),) = ymono
                if v.k != 0 or e != 1:
                    raise ValueError(f"unexpected coefficient {c} in D(X^alpha)")
                mats[(v.i - 1) * n + (v.j - 1)][row][col] += s.to_fraction()
    return mats


def rational_eigenvalues(L: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    """Rational roots of the characteristic polynomial of L.

    Clearing denominators by D turns rational eigenvalues of L into
    eigenvalues of the integer matrix D*L, which are roots of a monic
    integer polynomial and hence integers.
    """
    den = 1
    for row in L:
        for x in row:
            den = lcm(den, x.denominator)
    M = flint.fmpz_mat([[int(x * den) for x in row] for row in L])
    roots = M.charpoly().roots()
    return sorted(Fraction(int(r), den) for r, _ in roots)


def _apply(L, v):
    return [sum((a * b for a, b in zip(row, v) if b), Fraction(0)) for row in L]


def _joint_eigenspaces(mats, vectors, lam=()):
    """Yield (eigenvalue tuple, basis) for every nonzero joint eigenspace."""
    if not vectors:
        return
    k = len(lam)
    if k == len(mats):
        yield lam, vectors
        return
    L = mats[k]
    images = [_apply(L, v) for v in vectors]
    for ev in rational_eigenvalues(L):
        # coefficients c with (L - ev) sum c_r v_r = 0
        cols = [[img[i] - ev * v[i] for i in range(len(v))] for img, v in zip(images, vectors)]
        A = [list(row) for row in zip(*cols)]
        coeffs = nullspace(A, len(vectors), Fraction(1))
        sub = [
            [sum((c * v[i] for c, v in zip(cv, vectors) if c), Fraction(0)) for i in range(len(vectors[0]))]
            for cv in coeffs
        ]
        yield from _joint_eigenspaces(mats, sub, lam + (ev,))


def _vector_to_rpoly(n: int, monos, v) -> RPoly:
    return RPoly(n, {m: Scalar(c) for m, c in zip(monos, v) if c})


def enumerate_darboux_generic(
    n: int, d: int, basis: Optional[Sequence] = None
) -> List[RPoly]:
    """Q-basis of the span of all Darboux p in Q[X] with deg p <= d.

    D(p) = sum_st Y_st L_st(p), so p is Darboux exactly when it is a joint
    eigenvector of the L_st.  D preserves degree, so each degree is handled
    on its own.  Within a joint eigenspace the basis is in reduced echelon
    form with pivots on the smallest monomials.  The result is sorted by
    leading power product.
    """
    spec = derivation_from_basis(basis) if basis is not None else DerivationSpec.generic(n)
    if spec.n != n:
        raise ValueError(f"basis is for n={spec.n}, asked for n={n}")
    out: List[RPoly] = []
    for deg in range(d + 1):
        monos = monomials_of_degree(n * n, deg)
        mats = _direction_matrices(spec, monos)
        size = len(monos)
        ident = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
        for _, vecs in _joint_eigenspaces(mats, ident):
            reduced, pivots = rref(vecs)
            for row in reduced[: len(pivots)]:
                out.append(_vector_to_rpoly(n, monos, row))
    out.sort(key=lambda p: xorder_key(leading_power_product(p)[0]))
    return out


def darboux_eigenvalues(
    n: int, d: int, basis: Optional[Sequence] = None
) -> List[Tuple[int, Tuple[Fraction, ...], int]]:
    """(degree, eigenvalue tuple, dimension) for each joint eigenspace."""
    spec = derivation_from_basis(basis) if basis is not None else DerivationSpec.generic(n)
    found = []
    for deg in range(d + 1):
        monos = monomials_of_degree(n * n, deg)
        mats = _direction_matrices(spec, monos)
        size = len(monos)
        ident = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
        for lam, vecs in _joint_eigenspaces(mats, ident):
            found.append((deg, lam, len(vecs)))
    return found


# -- exhaustive search in F{Y} -------------------------------------------------


def _diffpoly_monomials(variables: Sequence[DiffVar], max_degree: int):
    monos = []
    for deg in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(variables, deg):
            exps: Dict[DiffVar, int] = {}
            for v in combo:
                exps[v] = exps.get(v, 0) + 1
            monos.append(tuple(sorted(exps.items())))
    return monos


def is_darboux_diffpoly(p: DiffPoly, cfg: FieldConfig = QQ) -> bool:
    """p divides D(p) in F{Y}."""
    if not p:
        raise ValueError("the zero polynomial is excluded")
    return dp_exact_divide(dp_derive(p, cfg), p) is not None


def fuzz_darboux_diffring(
    n: int,
    max_order: int,
    max_degree: int,
    coeff_set: Iterable,
    cfg: FieldConfig = QQ,
) -> List[DiffPoly]:
    """Every nonzero p in the finite search box that divides its own derivative.

    The box is all Y_{ij,k} with i, j <= n and k <= max_order, monomials of
    total degree <= max_degree, and coefficients from coeff_set.
    """
    coeffs = [Scalar(c) for c in coeff_set]
    variables = [
        DiffVar(i, j, k)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        for k in range(max_order + 1)
    ]
    monos = _diffpoly_monomials(variables, max_degree)
    hits = []
    for choice in itertools.product(coeffs, repeat=len(monos)):
        p = DiffPoly(dict(zip(monos, choice)))
        if p and is_darboux_diffpoly(p, cfg):
            hits.append(p)
    return hits


def is_constant(
    num: RPoly, den: RPoly, spec: DerivationSpec, cfg: FieldConfig = QQ
) -> bool:
    """D(num/den) = 0, tested as D(num)*den - num*D(den) = 0."""
    if not den:
        raise ZeroDivisionError("zero denominator")
    return not (r_derive(num, spec, cfg) * den - num * r_derive(den, spec, cfg))
