import pytest
from hypothesis import given, settings

from darbouxpv.diffring import DiffPoly, DiffVar, Y, dp_derive, dp_exact_divide, dp_leader, dp_mul
from darbouxpv.scalar import FieldConfig, Scalar

from helpers import S, diffpoly_to_sympy, diffpolys, same

t = Scalar.gen(1)
UNIT = FieldConfig.unit(1)


def test_square():
    assert dp_mul(Y(1, 1), Y(1, 1)) == Y(1, 1) ** 2


def test_difference_of_squares():
    assert dp_mul(Y(1, 1) + 1, Y(1, 1) - 1) == Y(1, 1) ** 2 - 1


def test_mixed_orders_coexist():
    p = dp_mul(Y(1, 2), Y(2, 1, 1))
    assert len(p) == 1
    assert p.variables() == {DiffVar(1, 2), DiffVar(2, 1, 1)}


def test_shift_rule():
    assert dp_derive(Y(1, 1)) == Y(1, 1, 1)


def test_leibniz_square():
    assert dp_derive(Y(1, 1) ** 2) == 2 * Y(1, 1) * Y(1, 1, 1)


def test_coefficient_derivative():
    p = Y(1, 2) * t
    assert dp_derive(p, UNIT) == Y(1, 2) + Y(1, 2, 1) * t
    assert same(diffpoly_to_sympy(dp_derive(p, UNIT)), diffpoly_to_sympy(p).diff(S))


def test_exact_division():
    assert dp_exact_divide(Y(1, 1) ** 2 - 1, Y(1, 1) - 1) == Y(1, 1) + 1
    assert dp_exact_divide(Y(1, 1), Y(1, 2)) is None
    q = dp_exact_divide(2 * Y(1, 1) * Y(1, 1, 1), Y(1, 1))
    assert q == 2 * Y(1, 1, 1)
    assert dp_mul(q, Y(1, 1)) == 2 * Y(1, 1) * Y(1, 1, 1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        dp_exact_divide(Y(1, 1), DiffPoly())


def test_leader_order():
    assert dp_leader(Y(1, 1) + Y(1, 2)) == DiffVar(1, 2)
    assert dp_leader(Y(2, 2) + Y(1, 1, 5)) == DiffVar(2, 2)
    assert dp_leader(Y(1, 1) + Y(1, 1, 1)) == DiffVar(1, 1, 1)


def test_leader_of_constant_raises():
    with pytest.raises(ValueError):
        dp_leader(DiffPoly.const(3))


def test_constant_value():
    assert DiffPoly.const(t).constant_value() == t
    with pytest.raises(ValueError):
        Y(1, 1).constant_value()


@given(diffpolys(), diffpolys())
@settings(max_examples=50, deadline=None)
def test_leibniz_random(p, q):
    lhs = dp_derive(p * q, UNIT)
    rhs = dp_derive(p, UNIT) * q + p * dp_derive(q, UNIT)
    assert lhs == rhs


@given(diffpolys())
@settings(max_examples=40, deadline=None)
def test_derivative_matches_sympy(p):
    assert same(diffpoly_to_sympy(dp_derive(p, UNIT)), diffpoly_to_sympy(p).diff(S))


@given(diffpolys(), diffpolys())
@settings(max_examples=50, deadline=None)
def test_division_round_trip(p, d):
    if not d:
        return
    prod = p * d
    q = dp_exact_divide(prod, d)
    assert q is not None and q * d == prod
    q2 = dp_exact_divide(p, d)
    if q2 is not None:
        assert q2 * d == p


@given(diffpolys())
@settings(max_examples=50, deadline=None)
def test_shift_raises_leader(p):
    if p.is_constant():
        return
    dp = dp_derive(p, UNIT)
    assert dp_leader(dp) > dp_leader(p)
