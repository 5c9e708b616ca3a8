from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from darbouxpv.flat import COFACTOR_LIMIT, FlatMatrix, checked_det, second_method
from darbouxpv.linalg import (
    det_bareiss,
    det_cofactor,
    det_dodgson,
    det_gauss,
    nullspace,
    rank,
    rref,
)
from darbouxpv.matring import RPoly, x_var
from darbouxpv.scalar import Scalar

from helpers import rpoly_to_sympy, rpolys

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def square(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    return [[draw(fractions) for _ in range(n)] for _ in range(n)]


@given(square())
@settings(max_examples=80, deadline=None)
def test_all_algorithms_match_sympy(M):
    ref = sp.Matrix(M).det()
    for algo in (det_cofactor, det_bareiss, det_gauss, det_dodgson):
        assert algo(M) == ref


def test_dodgson_falls_back_on_zero_interior():
    # interior entry (1,1) is zero, so condensation would divide by zero
    M = [[Fraction(x) for x in row] for row in [[1, 2, 3], [4, 0, 6], [7, 8, 10]]]
    calls = []

    def fallback(A):
        calls.append(1)
        return det_cofactor(A)

    assert det_dodgson(M, fallback=fallback) == sp.Matrix(M).det()
    assert calls


def test_singular_and_pivoting():
    M = [[Fraction(0), Fraction(1)], [Fraction(1), Fraction(0)]]
    assert det_bareiss(M) == -1 == det_gauss(M)
    Z = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert det_bareiss(Z) == 0 == det_gauss(Z) == det_cofactor(Z)


def test_non_square_rejected():
    with pytest.raises(ValueError):
        det_cofactor([[1, 2]])
    with pytest.raises(ValueError):
        det_bareiss([])


def test_nullspace_and_rank_match_sympy():
    M = [[Fraction(x) for x in row] for row in [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]]
    ns = nullspace(M)
    assert len(ns) == sp.Matrix(M).cols - sp.Matrix(M).rank() == 2
    assert rank(M) == 2
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M)
    reduced, pivots = rref(M)
    assert sp.Matrix(reduced[: len(pivots)]) == sp.Matrix(M).rref()[0][: len(pivots), :]


def test_nullspace_of_empty_system():
    assert nullspace([], 2, Fraction(1)) == [[1, 0], [0, 1]]


def test_polynomial_matrix_algorithms_agree():
    n = 2
    X = [[x_var(n, i, j) for j in (1, 2)] for i in (1, 2)]
    t = Scalar.gen(1)
    M = [
        [X[0][0] * t, X[0][1], RPoly.const(2, 1)],
        [X[1][0], X[1][1] * (1 / (t + 1)), X[0][0]],
        [RPoly.const(2, t), X[0][1] + X[1][1], X[1][0] * 3],
    ]
    fm = FlatMatrix(M)
    results = {m: fm.det(m) for m in ("bareiss", "cofactor", "gauss", "dodgson")}
    first = results["bareiss"]
    assert all(r == first for r in results.values())
    sym = sp.Matrix([[rpoly_to_sympy(p) for p in row] for row in M]).det()
    assert sp.simplify(sym - rpoly_to_sympy(first)) == 0


@given(st.lists(rpolys(max_degree=1, max_terms=2), min_size=9, max_size=9))
@settings(max_examples=25, deadline=None)
def test_checked_det_random(entries):
    M = [entries[0:3], entries[3:6], entries[6:9]]
    det, methods = checked_det(M, ("bareiss", "cofactor", "gauss", "dodgson"))
    sym = sp.Matrix([[rpoly_to_sympy(p) for p in row] for row in M]).det()
    assert sp.expand(sym - rpoly_to_sympy(det)) == 0


def test_second_method_switch():
    assert second_method(COFACTOR_LIMIT) == "cofactor"
    assert second_method(COFACTOR_LIMIT + 1) == "gauss"
