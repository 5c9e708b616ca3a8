"""Independent sympy oracles and hypothesis strategies shared by the tests.

The oracles model the differential ring with sympy functions of one
variable s: t1 = s (so D(t1) = 1), Y_{ij,k} is the k-th derivative of a
function y_ij(s), and X_ij is a function x_ij(s) whose derivative is
replaced by the defining rule of the derivation after sympy differentiates.
"""

from __future__ import annotations

import sympy as sp
from hypothesis import strategies as st

from darbouxpv.diffring import DiffPoly, DiffVar
from darbouxpv.matring import RPoly
from darbouxpv.scalar import Scalar

S = sp.Symbol("s")


def y_fun(i, j):
    return sp.Function(f"y{i}{j}")(S)


def x_fun(i, j):
    return sp.Function(f"x{i}{j}")(S)


def scalar_to_sympy(c: Scalar):
    """Only t1 may occur; it maps to s."""
    num = sp.Integer(0)
    for exps, coeff in c.num.terms():
        assert all(e == 0 for e in exps[1:]), "oracle handles t1 only"
        num += sp.Rational(int(coeff.p), int(coeff.q)) * S ** exps[0]
    den = sp.Integer(0)
    for exps, coeff in c.den.terms():
        den += sp.Rational(int(coeff.p), int(coeff.q)) * S ** exps[0]
    return num / den


def diffvar_to_sympy(v: DiffVar):
    f = y_fun(v.i, v.j)
    return sp.diff(f, S, v.k) if v.k else f


def diffpoly_to_sympy(p: DiffPoly):
    out = sp.Integer(0)
    for mono, c in p.terms.items():
        term = scalar_to_sympy(c)
        for v, e in mono:
            term *= diffvar_to_sympy(v) ** e
        out += term
    return out


def rpoly_to_sympy(p: RPoly):
    n = p.n
    out = sp.Integer(0)
    for alpha, c in p.terms.items():
        term = diffpoly_to_sympy(c)
        for k, e in enumerate(alpha):
            if e:
                term *= x_fun(k // n + 1, k % n + 1) ** e
        out += term
    return out


def sympy_derive(expr, n: int, coeff_matrix):
    """d/ds of expr with x_ij' replaced by sum_l W_il x_lj.

    coeff_matrix[i][l] is a sympy expression (y_il(s) for the generic
    derivation, f_il for a specialized one).
    """
    d = sp.diff(expr, S)
    subs = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            subs[sp.Derivative(x_fun(i, j), S)] = sum(
                coeff_matrix[i - 1][l - 1] * x_fun(l, j) for l in range(1, n + 1)
            )
    return d.subs(subs)


def generic_matrix(n: int):
    return [[y_fun(i, l) for l in range(1, n + 1)] for i in range(1, n + 1)]


def same(a, b) -> bool:
    return sp.simplify(sp.expand(a - b)) == 0


# -- strategies ----------------------------------------------------------------

small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def t1_polys(draw, max_degree=2):
    coeffs = draw(st.lists(small_ints, min_size=1, max_size=max_degree + 1))
    t = Scalar.gen(1)
    out = Scalar(0)
    for k, c in enumerate(coeffs):
        out = out + Scalar(c) * t**k
    return out


@st.composite
def t1_scalars(draw):
    """Rational functions in t1 with small coefficients."""
    num = draw(t1_polys())
    den = draw(t1_polys().filter(bool))
    return num / den


@st.composite
def diffpolys(draw, n=2, max_order=1, max_terms=3, max_degree=2, coeff=None):
    coeff = t1_polys(1) if coeff is None else coeff
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        deg = draw(st.integers(0, max_degree))
        exps = {}
        for _ in range(deg):
            v = DiffVar(
                draw(st.integers(1, n)), draw(st.integers(1, n)), draw(st.integers(0, max_order))
            )
            exps[v] = exps.get(v, 0) + 1
        mono = tuple(sorted(exps.items()))
        terms[mono] = terms.get(mono, Scalar(0)) + draw(coeff)
    return DiffPoly(terms)


@st.composite
def xmonomials(draw, n=2, max_degree=3):
    deg = draw(st.integers(0, max_degree))
    e = [0] * (n * n)
    for _ in range(deg):
        e[draw(st.integers(0, n * n - 1))] += 1
    return tuple(e)


@st.composite
def rpolys(draw, n=2, max_degree=3, max_terms=4, coefficients=None, y_free=False):
    if coefficients is None:
        coefficients = (
            t1_polys(1).map(DiffPoly.const) if y_free else diffpolys(n=n, max_terms=2)
        )
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        terms[draw(xmonomials(n, max_degree))] = draw(coefficients)
    return RPoly(n, terms)


@st.composite
def matrices(draw, n=2, entries=None):
    entries = t1_polys(2) if entries is None else entries
    return [[draw(entries) for _ in range(n)] for _ in range(n)]
