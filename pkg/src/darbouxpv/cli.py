"""Command-line interface.

Exit codes: 0 success, 1 negative mathematical verdict, 2 usage or parse
error.  ``--json`` prints one JSON document on stdout; exact values are
rendered as strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .darboux import (
    ClassificationInconsistency,
    classify_darboux,
    darboux_cofactor,
    enumerate_darboux_generic,
    fuzz_darboux_diffring,
    is_constant,
)
from .expr import ParseError, format_diffpoly, format_expr, parse_expr, parse_matrix, parse_scalar
from .gl2 import (
    abcdefgh,
    m_det,
    theta_constant,
    w1_factorization_check,
)
from .matring import DerivationSpec, derivation_from_basis, r_derive
from .scalar import FieldConfig
from .wronskian import check_specialization, monomial_basis, wronskian_det

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2

EXIT_MEANINGS = {
    EXIT_OK: "success",
    EXIT_NEGATIVE: "negative mathematical verdict",
    EXIT_USAGE: "usage or parse error",
}

JSON_SCHEMA = {
    "type": "object",
    "required": ["command", "n", "m", "inputs", "result", "exit_semantics"],
    "properties": {
        "command": {"type": "string"},
        "n": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 0},
        "inputs": {"type": "object", "additionalProperties": {"type": ["string", "integer", "null"]}},
        "result": {
            "type": "object",
            "required": ["kind"],
            "properties": {
                "kind": {"type": "string"},
                "value": {},
                "report": {"type": "array"},
            },
            "oneOf": [{"required": ["value"]}, {"required": ["report"]}],
        },
        "sign": {"type": ["integer", "null"]},
        "truncation_k": {"type": "integer", "minimum": 1},
        "exit_semantics": {
            "type": "object",
            "required": ["code", "meaning"],
            "properties": {
                "code": {"enum": [0, 1, 2]},
                "meaning": {"type": "string"},
            },
        },
    },
    "additionalProperties": False,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, default=2, help="matrix size (default 2)")
    p.add_argument("--m", type=int, default=0, help="number of generators t1..tm")
    p.add_argument("--dt", help="comma-separated D(t1),...,D(tm); default all 1")
    p.add_argument("--json", action="store_true", help="print a JSON document")
    return p


def _derivation_flags(p: argparse.ArgumentParser, required: bool = True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--generic", action="store_true", help="D(X) = Y*X with symbolic Y")
    g.add_argument("--f", help='specialized D(X) = f*X, e.g. "1,1;1,1"')
    p.add_argument(
        "--basis",
        help='generic derivation over a Lie basis: matrices "a,b;c,d" separated by "|"',
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    root = _Parser(prog="darbouxpv", description="Exact differential algebra on F{Y}[X].")
    sub = root.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("derive", parents=[common], help="D(expr)")
    _derivation_flags(p)
    p.add_argument("--expr", required=True)

    dar = sub.add_parser("darboux", help="Darboux polynomials")
    dsub = dar.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = dsub.add_parser("check", parents=[common], help="is expr a Darboux polynomial")
    _derivation_flags(p)
    p.add_argument("--expr", required=True)
    p = dsub.add_parser("enumerate", parents=[common], help="all Darboux p in Q[X] up to a degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--basis")
    p = dsub.add_parser("fuzz", parents=[common], help="exhaustive search in F{Y}")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument(
        "--coeffs",
        default="-1,0,1",
        help="comma-separated coefficients; write --coeffs=-1,0,1 when the list starts with '-'",
    )

    p = sub.add_parser("constant", parents=[common], help="is num/den a constant")
    _derivation_flags(p)
    p.add_argument("--num", required=True)
    p.add_argument("--den", required=True)

    p = sub.add_parser("wronskian", parents=[common], help="W_1..W_kmax")
    _derivation_flags(p)
    p.add_argument("--kmax", type=int, default=1)

    g2 = sub.add_parser("gl2", help="the 2x2 new-constant computation")
    gsub = g2.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = gsub.add_parser("demo", parents=[common], help="A..H, M and theta for f")
    p.add_argument("--f", required=True)
    p = gsub.add_parser("factor", parents=[common], help="W_1 against M*det^2")
    _derivation_flags(p)
    return root


def _field(args) -> FieldConfig:
    if args.m < 0:
        raise UsageError("--m must be non-negative")
    if args.dt is None:
        return FieldConfig.unit(args.m)
    shape = FieldConfig.unit(args.m)
    dts = [parse_scalar(s, shape) for s in args.dt.split(",")] if args.dt.strip() else []
    try:
        return FieldConfig(args.m, tuple(dts))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _spec(args, cfg: FieldConfig) -> DerivationSpec:
    if getattr(args, "f", None):
        f = parse_matrix(args.f, cfg)
        if len(f) != args.n:
            raise UsageError(f"--f is {len(f)}x{len(f)} but --n is {args.n}")
        return DerivationSpec.specialized(f)
    if getattr(args, "basis", None):
        spec = derivation_from_basis([parse_matrix(b, cfg) for b in args.basis.split("|")])
        if spec.n != args.n:
            raise UsageError(f"--basis is for n={spec.n} but --n is {args.n}")
        return spec
    return DerivationSpec.generic(args.n)


def _expr(text: str, args, cfg: FieldConfig):
    return parse_expr(text, args.n, cfg)


class _Out:
    """Collects one command's result for text or JSON output."""

    def __init__(self, args, command: str, inputs: dict):
        self.args = args
        self.doc = {"command": command, "n": args.n, "m": args.m, "inputs": inputs}
        self.lines: List[str] = []

    def say(self, line: str):
        self.lines.append(line)

    def finish(self, code: int, kind: str, value=None, report=None, **extra) -> int:
        result = {"kind": kind}
        if report is not None:
            result["report"] = report
        else:
            result["value"] = value
        self.doc["result"] = result
        self.doc.update(extra)
        self.doc["exit_semantics"] = {"code": code, "meaning": EXIT_MEANINGS[code]}
        if self.args.json:
            print(json.dumps(self.doc, indent=2))
        else:
            for line in self.lines:
                print(line)
        return code


def _inputs(args, *names) -> dict:
    out = {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}
    out["dt"] = args.dt
    return out


def _cmd_derive(args, cfg) -> int:
    spec = _spec(args, cfg)
    p = _expr(args.expr, args, cfg)
    dp = r_derive(p, spec, cfg)
    out = _Out(args, "derive", _inputs(args, "expr", "f", "basis"))
    out.say(f"D({format_expr(p)}) = {format_expr(dp)}")
    q = darboux_cofactor(p, spec, cfg) if p else None
    if q is not None and q:
        out.say(f"          = ({format_diffpoly(q)}) * ({format_expr(p)})")
    return out.finish(EXIT_OK, "rpoly", format_expr(dp))


def _cmd_darboux_check(args, cfg) -> int:
    spec = _spec(args, cfg)
    p = _expr(args.expr, args, cfg)
    out = _Out(args, "darboux check", _inputs(args, "expr", "f", "basis"))
    if not p:
        raise UsageError("the zero polynomial is not a Darboux candidate")
    q = darboux_cofactor(p, spec, cfg)
    if q is None:
        out.say(f"{format_expr(p)} is not a Darboux polynomial")
        return out.finish(EXIT_NEGATIVE, "not_darboux", None)
    out.say(f"D(p) = q*p with q = {format_diffpoly(q)}")
    value = {"cofactor": format_diffpoly(q)}
    if spec.kind == "generic":
        ell, a = classify_darboux(p, spec, cfg)
        out.say(f"p = ({ell}) * det^{a}")
        value.update({"ell": str(ell), "a": a})
    return out.finish(EXIT_OK, "darboux", value)


def _cmd_darboux_enumerate(args, cfg) -> int:
    if args.m:
        raise UsageError("enumeration works over Q; use --m 0")
    basis = None
    if args.basis:
        basis = [parse_matrix(b, cfg) for b in args.basis.split("|")]
    polys = enumerate_darboux_generic(args.n, args.degree, basis)
    out = _Out(args, "darboux enumerate", _inputs(args, "degree", "basis"))
    for p in polys:
        out.say(format_expr(p))
    return out.finish(EXIT_OK, "basis", [format_expr(p) for p in polys])


def _cmd_darboux_fuzz(args, cfg) -> int:
    coeffs = [parse_scalar(c, cfg) for c in args.coeffs.split(",")]
    hits = fuzz_darboux_diffring(args.n, args.order, args.degree, coeffs, cfg)
    nontrivial = [h for h in hits if not h.is_constant()]
    out = _Out(args, "darboux fuzz", _inputs(args, "order", "degree", "coeffs"))
    out.say(f"{len(hits)} Darboux elements found, {len(nontrivial)} outside F")
    for h in nontrivial:
        out.say(f"  {format_diffpoly(h)}")
    code = EXIT_NEGATIVE if nontrivial else EXIT_OK
    return out.finish(code, "fuzz", {
        "found": len(hits),
        "outside_F": [format_diffpoly(h) for h in nontrivial],
    })


def _cmd_constant(args, cfg) -> int:
    spec = _spec(args, cfg)
    num = _expr(args.num, args, cfg)
    den = _expr(args.den, args, cfg)
    if not den:
        raise UsageError("zero denominator")
    const = is_constant(num, den, spec, cfg)
    out = _Out(args, "constant", _inputs(args, "num", "den", "f", "basis"))
    verdict = "is" if const else "is not"
    out.say(f"({format_expr(num)})/({format_expr(den)}) {verdict} a constant")
    return out.finish(EXIT_OK if const else EXIT_NEGATIVE, "boolean", const)


def _cmd_wronskian(args, cfg) -> int:
    if args.kmax < 1:
        raise UsageError("--kmax must be at least 1")
    spec = _spec(args, cfg)
    if spec.kind == "specialized":
        reports = check_specialization(spec.f, args.kmax, cfg)
    else:
        reports = [
            wronskian_det(monomial_basis(k, args.n, cfg), spec, cfg)
            for k in range(1, args.kmax + 1)
        ]
    out = _Out(args, "wronskian", _inputs(args, "f", "basis", "kmax"))
    rows = []
    for r in reports:
        verdict = "= 0" if r.is_zero else "!= 0"
        out.say(f"W_{r.k} (size {r.basis_size}, {' vs '.join(r.methods)}) {verdict}")
        if not args.json:
            out.say(f"  W_{r.k} = {format_expr(r.determinant)}")
        rows.append({
            "k": r.k,
            "basis_size": r.basis_size,
            "determinant": format_expr(r.determinant),
            "is_zero": r.is_zero,
            "methods": list(r.methods),
        })
    ok = all(not r.is_zero for r in reports)
    out.say(f"{'passes' if ok else 'fails'} up to k = {args.kmax} (truncated check)")
    return out.finish(
        EXIT_OK if ok else EXIT_NEGATIVE, "wronskian", report=rows, truncation_k=args.kmax
    )


def _cmd_gl2_demo(args, cfg) -> int:
    if args.n != 2:
        raise UsageError("gl2 needs --n 2")
    f = parse_matrix(args.f, cfg)
    if len(f) != 2:
        raise UsageError("--f must be 2x2")
    out = _Out(args, "gl2 demo", _inputs(args, "f"))
    vals = abcdefgh(f, cfg)
    for name, v in vals._asdict().items():
        out.say(f"{name} = {v}")
    m = m_det(f, cfg)
    out.say(f"M = {m}")
    value = {k: str(v) for k, v in vals._asdict().items()}
    value["M"] = str(m)
    theta = theta_constant(f, cfg)
    if not theta:
        out.say(f"theta unavailable: {theta.reason}")
        value["theta"] = None
        value["reason"] = theta.reason
        return out.finish(EXIT_NEGATIVE, "gl2", value, sign=None)
    text = f"({format_expr(theta.numerator)})/({format_expr(theta.denominator)})"
    out.say(f"theta = {text}")
    out.say("D(theta) = 0")
    value["theta"] = text
    spec = DerivationSpec.specialized(f)
    w1 = w1_factorization_check(spec, cfg)
    return out.finish(EXIT_OK, "gl2", value, sign=w1.sign)


def _cmd_gl2_factor(args, cfg) -> int:
    if args.n != 2:
        raise UsageError("gl2 needs --n 2")
    spec = _spec(args, cfg)
    res = w1_factorization_check(spec, cfg)
    out = _Out(args, "gl2 factor", _inputs(args, "f", "basis"))
    m_text = str(res.m)
    out.say(f"W_1 = {format_expr(res.w1)}")
    out.say(f"M = {m_text}")
    sign = "n/a (both sides 0)" if res.sign is None else f"{res.sign:+d}"
    out.say(f"W_1 = eps*M*det^2: {'holds' if res.holds else 'FAILS'}, eps = {sign}")
    value = {"holds": res.holds, "W1": format_expr(res.w1), "M": m_text}
    return out.finish(EXIT_OK if res.holds else EXIT_NEGATIVE, "factorization", value, sign=res.sign)


_COMMANDS = {
    ("derive", None): _cmd_derive,
    ("darboux", "check"): _cmd_darboux_check,
    ("darboux", "enumerate"): _cmd_darboux_enumerate,
    ("darboux", "fuzz"): _cmd_darboux_fuzz,
    ("constant", None): _cmd_constant,
    ("wronskian", None): _cmd_wronskian,
    ("gl2", "demo"): _cmd_gl2_demo,
    ("gl2", "factor"): _cmd_gl2_factor,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.n < 1:
            raise UsageError("--n must be positive")
        cfg = _field(args)
        handler = _COMMANDS[(args.command, getattr(args, "action", None))]
        return handler(args, cfg)
    except SystemExit as exc:
        # --help exits 0 through argparse
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, ParseError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ClassificationInconsistency as exc:
        print(f"classification inconsistency: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


def main() -> None:
    sys.exit(run())
