import json
import subprocess
import sys

import jsonschema
import pytest
from hypothesis import given, settings

from darbouxpv.cli import JSON_SCHEMA, run
from darbouxpv.diffring import DiffPoly, Y
from darbouxpv.expr import ParseError, format_expr, parse_expr, parse_matrix, parse_scalar
from darbouxpv.matring import RPoly, det_x, x_var
from darbouxpv.scalar import FieldConfig, Scalar

from helpers import diffpolys, rpolys, t1_scalars

t = Scalar.gen(1)
UNIT = FieldConfig.unit(1)


def test_parse_det_spelled_out():
    assert parse_expr("X[1,1]*X[2,2] - X[1,2]*X[2,1]") == det_x(2)


def test_parse_det_keyword():
    assert parse_expr("det", 2) == det_x(2)
    assert parse_expr("det", 3) == det_x(3)


def test_parse_y_with_order():
    got = parse_expr("Y[1,1;2]^2 * t1 + 3/4", 2, UNIT)
    want = RPoly.const(2, Y(1, 1, 2) ** 2 * t + DiffPoly.const(Scalar(3, 4)))
    assert got == want


def test_parse_unary_minus_and_parens():
    assert parse_expr("-(X[1,1] + 2)^2") == -((x_var(2, 1, 1) + 2) ** 2)
    assert parse_expr("--X[1,2]") == x_var(2, 1, 2)


def test_parse_division_by_field_element():
    assert parse_expr("X[1,1]/(t1 + 1)", 2, UNIT) == x_var(2, 1, 1) * (1 / (t + 1))


def test_format_examples():
    assert format_expr(det_x(2)) == "-X[1,2]*X[2,1] + X[1,1]*X[2,2]"
    assert format_expr(RPoly(2)) == "0"
    assert format_expr(RPoly.const(2, Scalar(5, 3))) == "5/3"


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("X[1,1] +", 1, 9),
        ("X[1,3]", 1, 5),
        ("X[1,1] $ 2", 1, 8),
        ("X[1,1]\n  * (2", 2, 7),
        ("X[1,1]^-1", 1, 8),
    ],
)
def test_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_expr(text, 2)
    assert (err.value.line, err.value.column) == (line, col)


def test_out_of_range_index_is_named():
    with pytest.raises(ParseError, match="3"):
        parse_expr("Y[3,1]", 2)


def test_division_by_x_rejected():
    with pytest.raises(ParseError):
        parse_expr("1/X[1,1]")


def test_generator_outside_field_rejected():
    with pytest.raises(ParseError):
        parse_expr("t2", 2, UNIT)


def test_parse_scalar_and_matrix():
    assert parse_scalar("t1^2 - 1/2", UNIT) == t**2 - Scalar(1, 2)
    assert parse_matrix("1,t1;0,2", UNIT) == [[1, t], [0, 2]]
    with pytest.raises(ParseError):
        parse_scalar("X[1,1]")
    with pytest.raises(ParseError):
        parse_matrix("1,2;3")


@given(rpolys())
@settings(max_examples=60, deadline=None)
def test_round_trip_polynomial_coefficients(p):
    assert parse_expr(format_expr(p), 2, UNIT) == p


@given(rpolys(coefficients=diffpolys(coeff=t1_scalars(), max_order=2)))
@settings(max_examples=60, deadline=None)
def test_round_trip_rational_coefficients(p):
    assert parse_expr(format_expr(p), 2, UNIT) == p


@given(rpolys(n=3, max_degree=2, coefficients=t1_scalars().map(DiffPoly.const)))
@settings(max_examples=30, deadline=None)
def test_round_trip_n3(p):
    text = format_expr(p)
    assert parse_expr(text, 3, UNIT) == p
    assert format_expr(parse_expr(text, 3, UNIT)) == text


def _json(capsys, argv):
    code = run(argv + ["--json"])
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, JSON_SCHEMA)
    assert doc["exit_semantics"]["code"] == code
    return code, doc


def test_cli_derive(capsys):
    assert run(["derive", "--n", "2", "--generic", "--expr", "det"]) == 0
    out = capsys.readouterr().out
    assert "(Y[2,2] + Y[1,1]) * (-X[1,2]*X[2,1] + X[1,1]*X[2,2])" in out


def test_cli_wronskian_ones(capsys):
    assert run(["wronskian", "--n", "2", "--m", "0", "--f", "1,1;1,1", "--kmax", "1"]) == 1
    assert "W_1 = 0" in capsys.readouterr().out


def test_cli_gl2_demo(capsys):
    assert run(["gl2", "demo", "--f", "1,1;1,1"]) == 0
    out = capsys.readouterr().out
    assert "theta = (X[1,2] + X[2,2])/(-X[1,2]*X[2,1] + X[1,1]*X[2,2])" in out
    assert "D(theta) = 0" in out


@pytest.mark.parametrize(
    "argv, code",
    [
        (["derive", "--generic", "--expr", "det"], 0),
        (["derive", "--m", "1", "--f", "0,1;t1,0", "--expr", "t1*X[1,1]"], 0),
        (["darboux", "check", "--generic", "--expr", "3*det^2"], 0),
        (["darboux", "check", "--generic", "--expr", "X[1,1]"], 1),
        (["darboux", "check", "--f", "1,1;1,1", "--expr", "X[1,2] + X[2,2]"], 0),
        (["darboux", "enumerate", "--degree", "2"], 0),
        (["darboux", "fuzz", "--n", "1", "--order", "1", "--degree", "1", "--coeffs=-1,0,1"], 0),
        (["constant", "--f", "1,1;1,1", "--num", "X[1,2] + X[2,2]", "--den", "det"], 0),
        (["constant", "--generic", "--num", "X[1,2] + X[2,2]", "--den", "det"], 1),
        (["wronskian", "--f", "1,1;1,1", "--kmax", "1"], 1),
        (["wronskian", "--n", "1", "--f", "0", "--kmax", "1"], 0),
        # D(X) = 0 makes X and X^2 constants, so W_2 vanishes
        (["wronskian", "--n", "1", "--f", "0", "--kmax", "2"], 1),
        (["gl2", "demo", "--f", "1,1;1,1"], 0),
        (["gl2", "demo", "--f", "1,2;0,0"], 1),
        (["gl2", "factor", "--generic"], 0),
        (["gl2", "factor", "--f", "1,1;1,1"], 0),
    ],
)
def test_cli_json_documents(capsys, argv, code):
    got, doc = _json(capsys, argv)
    assert got == code
    if argv[0] == "wronskian":
        assert doc["truncation_k"] == int(argv[-1])
        assert "report" in doc["result"]
    if argv[0] == "gl2":
        assert "sign" in doc


def test_cli_gl2_factor_sign(capsys):
    _, doc = _json(capsys, ["gl2", "factor", "--generic"])
    assert doc["sign"] in (1, -1)
    _, doc = _json(capsys, ["gl2", "factor", "--f", "1,1;1,1"])
    assert doc["sign"] is None


def test_cli_exact_values_are_strings(capsys):
    _, doc = _json(capsys, ["gl2", "demo", "--m", "1", "--f", "t1/2,t1;t1^2/2,t1^2"])
    for k in "ABCDEFGH":
        assert isinstance(doc["result"]["value"][k], str)


@pytest.mark.parametrize(
    "argv",
    [
        ["derive", "--expr", "X[1,1] +", "--generic"],
        ["derive", "--expr", "X[3,1]", "--generic"],
        ["nonsense"],
        ["wronskian", "--f", "1,1;1,1", "--kmax", "0"],
        ["wronskian", "--n", "3", "--f", "1,1;1,1", "--kmax", "1"],
        ["gl2", "demo", "--n", "3", "--f", "1,1;1,1"],
        ["derive", "--generic", "--f", "1,1;1,1", "--expr", "det"],
        ["derive", "--m", "1", "--dt", "t2", "--f", "1,1;1,1", "--expr", "det"],
        ["constant", "--generic", "--num", "det", "--den", "0"],
    ],
)
def test_cli_usage_errors(capsys, argv):
    assert run(argv) == 2
    capsys.readouterr()


def test_cli_parse_error_reports_position(capsys):
    assert run(["derive", "--generic", "--expr", "X[1,1] +"]) == 2
    assert "line 1, column 9" in capsys.readouterr().err


def test_cli_custom_generator_derivative(capsys):
    # D(t1) = t1
    code = run(["derive", "--m", "1", "--dt", "t1", "--f", "0,0;0,0", "--expr", "t1^2*X[1,1]"])
    assert code == 0
    assert "D(t1^2*X[1,1]) = 2*t1^2*X[1,1]" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "darbouxpv", "derive", "--generic", "--expr", "det"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and "Y[1,1]" in proc.stdout
