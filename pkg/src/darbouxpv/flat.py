"""Flatten RPoly matrices to ordinary polynomials for fast determinants.

Each entry of R = F{Y}[X] becomes a polynomial over Q in the t's, the Y
variables in use and the X's, after clearing the t-denominators row by row.
The determinant algorithms themselves are the generic ones in
:mod:`darbouxpv.linalg`; FLINT only supplies the polynomial arithmetic.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import flint
from flint.utils.flint_exceptions import DomainError

from .diffring import DiffPoly, DiffVar
from .linalg import (
    DeterminantMismatch,
    det_bareiss,
    det_cofactor,
    det_dodgson,
    det_gauss,
)
from .matring import RPoly
from .scalar import _CTX, _PONE, MAX_GENERATORS, Scalar

# cofactor expansion costs about 2^n * n products; beyond this size the
# second opinion comes from elimination over the fraction field instead
COFACTOR_LIMIT = 10


class FlatRing:
    """Polynomial context for one matrix: t1..t_g, the Y's in use, the X's."""

    def __init__(self, n: int, yvars: Sequence[DiffVar], ngens: int):
        self.n = n
        self.ngens = ngens
        self.yvars = tuple(sorted(yvars))
        self.yindex = {v: ngens + k for k, v in enumerate(self.yvars)}
        self.xoffset = ngens + len(self.yvars)
        names = [f"t{i}" for i in range(1, ngens + 1)]
        names += [f"y_{v.i}_{v.j}_{v.k}" for v in self.yvars]
        names += [f"x_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1)]
        self.nvars = len(names)
        self.ctx = flint.fmpq_mpoly_ctx.get(tuple(names), "degrevlex")

    def zero(self):
        return self.ctx.from_dict({})

    def flatten(self, p: RPoly, scale) -> "flint.fmpq_mpoly":
        """scale * p with every t-denominator dividing scale."""
        out: Dict[Tuple[int, ...], flint.fmpq] = {}
        for xm, c in p.terms.items():
            for ym, s in c.terms.items():
                num = s.num * (scale / s.den) if not s.den.is_one() else s.num * scale
                base = [0] * self.nvars
                for v, e in ym:
                    base[self.yindex[v]] = e
                for k, e in enumerate(xm):
                    base[self.xoffset + k] = e
                g = self.ngens
                for texps, coeff in num.terms():
                    exps = list(base)
                    exps[:g] = texps[:g]
                    key = tuple(exps)
                    out[key] = out.get(key, 0) + coeff
        return self.ctx.from_dict({k: v for k, v in out.items() if v != 0})

    def unflatten(self, poly, scale) -> RPoly:
        """poly / scale back in R; scale is a t-polynomial."""
        groups: Dict[Tuple, Dict[Tuple[int, ...], flint.fmpq]] = {}
        g = self.ngens
        pad = (0,) * (MAX_GENERATORS - g)
        for exps, coeff in poly.terms():
            ykey = tuple(
                (v, exps[self.yindex[v]]) for v in self.yvars if exps[self.yindex[v]]
            )
            xkey = tuple(exps[self.xoffset :])
            groups.setdefault((xkey, ykey), {})[tuple(exps[:g]) + pad] = coeff
        terms: Dict[Tuple[int, ...], Dict] = {}
        for (xkey, ykey), tpoly in groups.items():
            s = Scalar._from_parts(_CTX.from_dict(tpoly), scale)
            terms.setdefault(xkey, {})[ykey] = s
        return RPoly(self.n, {xm: DiffPoly(ys) for xm, ys in terms.items()})


def _row_scale(row: Sequence[RPoly]):
    """Monic lcm of the t-denominators in a row."""
    scale = _PONE
    for p in row:
        for c in p.terms.values():
            for s in c.terms.values():
                if not s.den.is_one():
                    g = scale.gcd(s.den)
                    scale = scale * (s.den / g)
    return scale


class _RatFunc:
    """Quotient of two flat polynomials, kept in lowest terms."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den if den is not None else num.context().constant(1)

    @staticmethod
    def _make(num, den):
        if num.is_zero():
            return _RatFunc(num, num.context().constant(1))
        g = num.gcd(den)
        if not g.is_one():
            num, den = num / g, den / g
        return _RatFunc(num, den)

    def __bool__(self):
        return not self.num.is_zero()

    def __neg__(self):
        return _RatFunc(-self.num, self.den)

    def __add__(self, o):
        if self.den == o.den:
            return _RatFunc._make(self.num + o.num, self.den)
        return _RatFunc._make(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return _RatFunc._make(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return _RatFunc._make(self.num * o.den, self.den * o.num)

    def to_poly(self):
        try:
            return self.num / self.den
        except DomainError as exc:
            raise ArithmeticError("determinant over the fraction field is not a polynomial") from exc


class _ExactPoly:
    """Flat polynomial whose ``/`` is exact division (for Bareiss and Dodgson)."""

    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __bool__(self):
        return not self.p.is_zero()

    def __neg__(self):
        return _ExactPoly(-self.p)

    def __add__(self, o):
        return _ExactPoly(self.p + o.p)

    def __sub__(self, o):
        return _ExactPoly(self.p - o.p)

    def __mul__(self, o):
        return _ExactPoly(self.p * o.p)

    def __truediv__(self, o):
        try:
            return _ExactPoly(self.p / o.p)
        except DomainError as exc:
            raise ArithmeticError("inexact division in a fraction-free determinant") from exc


ALGORITHMS = ("bareiss", "cofactor", "gauss", "dodgson")


class FlatMatrix:
    """A square RPoly matrix flattened once, ready for several algorithms."""

    def __init__(self, M: Sequence[Sequence[RPoly]]):
        size = len(M)
        if size == 0 or any(len(r) != size for r in M):
            raise ValueError("matrix must be square and non-empty")
        n = M[0][0].n
        yvars = set()
        ngens = 0
        for row in M:
            for p in row:
                for c in p.terms.values():
                    yvars |= c.variables()
                    for s in c.terms.values():
                        ngens = max(ngens, s.max_generator())
        self.ring = FlatRing(n, yvars, ngens)
        self.scales = [_row_scale(row) for row in M]
        self.rows: List[List] = [
            [self.ring.flatten(p, s) for p in row] for row, s in zip(M, self.scales)
        ]
        total = _PONE
        for s in self.scales:
            total = total * s
        self.total_scale = total

    def flat_det(self, method: str):
        if method == "bareiss":
            return det_bareiss([[_ExactPoly(p) for p in r] for r in self.rows]).p
        if method == "cofactor":
            return det_cofactor(self.rows)
        if method == "dodgson":
            fallback = lambda A: _ExactPoly(det_cofactor([[x.p for x in r] for r in A]))
            wrapped = [[_ExactPoly(p) for p in r] for r in self.rows]
            return det_dodgson(wrapped, fallback=fallback).p
        if method == "gauss":
            return det_gauss([[_RatFunc(p) for p in r] for r in self.rows]).to_poly()
        raise ValueError(f"unknown determinant method {method!r}")

    def det(self, method: str) -> RPoly:
        return self.ring.unflatten(self.flat_det(method), self.total_scale)


def second_method(size: int) -> str:
    return "cofactor" if size <= COFACTOR_LIMIT else "gauss"


def checked_det(M: Sequence[Sequence[RPoly]], methods=None) -> Tuple[RPoly, Tuple[str, ...]]:
    """Determinant computed by two independent algorithms that must agree.

    Defaults to fraction-free elimination plus cofactor expansion, with
    Gaussian elimination over the fraction field standing in for cofactor
    expansion on large matrices.
    """
    fm = FlatMatrix(M)
    if methods is None:
        methods = ("bareiss", second_method(len(M)))
    results = [fm.flat_det(m) for m in methods]
    for m, r in zip(methods[1:], results[1:]):
        if r != results[0]:
            raise DeterminantMismatch(f"{methods[0]} and {m} disagree")
    return fm.ring.unflatten(results[0], fm.total_scale), tuple(methods)
