"""The base differential field F = Q(t1, ..., tm).

A :class:`Scalar` is a reduced quotient of two polynomials in the generators
t1..tm with rational coefficients.  Numerator and denominator live in one
shared FLINT polynomial context (degrevlex, t1 > t2 > ...), so values built
for different ``m`` mix freely; the field configuration only matters when
differentiating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import flint

MAX_GENERATORS = 8

_CTX = flint.fmpq_mpoly_ctx.get(
    tuple(f"t{i}" for i in range(1, MAX_GENERATORS + 1)), "degrevlex"
)
_PZERO = _CTX.from_dict({})
_PONE = _CTX.constant(1)

ScalarLike = Union["Scalar", int, Fraction]


def _fmpq(x) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    return flint.fmpq(x)


def _canonical(num, den):
    if den.is_zero():
        raise ZeroDivisionError("Scalar division by zero")
    if num.is_zero():
        return _PZERO, _PONE
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


class Scalar:
    """Exact element of Q(t1..tm) in canonical form.

    The denominator is monic under degrevlex and coprime to the numerator,
    so two scalars are equal exactly when their parts are equal.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: ScalarLike = 0, den: ScalarLike | None = None):
        if den is not None:
            q = Scalar(value) / Scalar(den)
            num, d = q.num, q.den
        elif isinstance(value, Scalar):
            num, d = value.num, value.den
        else:
            num, d = _as_poly(value), _PONE
        self.num = num
        self.den = d
        self._hash = None

    @classmethod
    def _raw(cls, num, den) -> "Scalar":
        s = object.__new__(cls)
        s.num = num
        s.den = den
        s._hash = None
        return s

    @classmethod
    def _from_parts(cls, num, den) -> "Scalar":
        return cls._raw(*_canonical(num, den))

    @classmethod
    def gen(cls, i: int) -> "Scalar":
        """The generator t_i (1-based)."""
        if not 1 <= i <= MAX_GENERATORS:
            raise ValueError(f"generator index {i} outside 1..{MAX_GENERATORS}")
        return cls._raw(_CTX.gen(i - 1), _PONE)

    @classmethod
    def from_exponents(cls, coeff, exps: Iterable[int]) -> "Scalar":
        """coeff * t1^e1 * t2^e2 * ... for a rational coeff."""
        exps = tuple(exps)
        exps = exps + (0,) * (MAX_GENERATORS - len(exps))
        return cls._raw(_CTX.from_dict({exps: _fmpq(coeff)}), _PONE)

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def max_generator(self) -> int:
        """Largest index i such that t_i occurs, 0 for rationals."""
        top = 0
        for poly in (self.num, self.den):
            for i, d in enumerate(poly.degrees(), start=1):
                if d > 0:
                    top = max(top, i)
        return top

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        c = self.num.leading_coefficient() if self else 0
        c = flint.fmpq(c)
        return Fraction(int(c.p), int(c.q))

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "Scalar":
        return Scalar._raw(-self.num, self.den)

    def __add__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return Scalar._raw(self.num + other.num, _PONE)
        if self.den == other.den:
            return Scalar._from_parts(self.num + other.num, self.den)
        return Scalar._from_parts(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "Scalar":
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return Scalar._raw(self.num * other.num, _PONE)
        return Scalar._from_parts(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: ScalarLike) -> "Scalar":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("Scalar division by zero")
        return Scalar._from_parts(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other: ScalarLike) -> "Scalar":
        return _coerce(other) / self

    def __pow__(self, e: int) -> "Scalar":
        if e < 0:
            return Scalar(1) / self ** (-e)
        return Scalar._raw(self.num**e, self.den**e)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((str(self.num), str(self.den)))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


def _as_poly(value):
    if isinstance(value, Scalar):
        return value.num
    if isinstance(value, (int, Fraction, flint.fmpq, flint.fmpz)):
        return _CTX.constant(_fmpq(value))
    if isinstance(value, flint.fmpq_mpoly):
        return value
    raise TypeError(f"cannot build a Scalar from {type(value).__name__}")


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar._raw(_CTX.constant(_fmpq(x)), _PONE)
    return NotImplemented


ZERO = Scalar(0)
ONE = Scalar(1)


@dataclass(frozen=True)
class FieldConfig:
    """Number of generators and the derivative D(t_i) of each one.

    ``m == 0`` is Q with the zero derivation.
    """

    m: int = 0
    generator_derivatives: tuple = field(default=())

    def __post_init__(self):
        if self.m < 0 or self.m > MAX_GENERATORS:
            raise ValueError(f"m must lie in 0..{MAX_GENERATORS}, got {self.m}")
        dts = tuple(Scalar(d) for d in self.generator_derivatives)
        if len(dts) != self.m:
            raise ValueError(
                f"expected {self.m} generator derivatives, got {len(dts)}"
            )
        for d in dts:
            if d.max_generator() > self.m:
                raise ValueError(f"D(t_i) = {d} uses a generator beyond t{self.m}")
        object.__setattr__(self, "generator_derivatives", dts)

    @classmethod
    def unit(cls, m: int) -> "FieldConfig":
        """D(t_i) = 1 for every generator."""
        return cls(m, (ONE,) * m)


QQ = FieldConfig()


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _derive_poly(p, cfg: FieldConfig) -> Scalar:
    out = ZERO
    for i, d in enumerate(p.degrees()):
        if d == 0:
            continue
        if i >= cfg.m:
            raise ValueError(f"t{i + 1} occurs but the field has m={cfg.m}")
        dt = cfg.generator_derivatives[i]
        if dt:
            out = out + Scalar._raw(p.derivative(i), _PONE) * dt
    return out


def scalar_derive(a: Scalar, cfg: FieldConfig = QQ) -> Scalar:
    """D(a), using D(t_i) from ``cfg`` and the quotient rule."""
    if a.is_constant():
        return ZERO
    dnum = _derive_poly(a.num, cfg)
    if a.den.is_one():
        return dnum
    num = Scalar._raw(a.num, _PONE)
    den = Scalar._raw(a.den, _PONE)
    return (dnum * den - num * _derive_poly(a.den, cfg)) / (den * den)


def _format_rational(c) -> str:
    c = flint.fmpq(c)
    if c.q == 1:
        return str(c.p)
    return f"{c.p}/{c.q}"


def format_poly(p) -> str:
    """Polynomial in the t's, terms in descending degrevlex order."""
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.terms():
        factors = []
        for i, e in enumerate(exps, start=1):
            if e == 1:
                factors.append(f"t{i}")
            elif e > 1:
                factors.append(f"t{i}^{e}")
        neg = c < 0
        mag = -c if neg else c
        if not factors:
            body = _format_rational(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_rational(mag) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _is_single_atom(p) -> bool:
    # one generator to a power, coefficient 1
    if len(p) != 1:
        return False
    exps, c = next(iter(p.terms()))
    return c == 1 and sum(1 for e in exps if e) == 1


def format_scalar(s: Scalar) -> str:
    num = format_poly(s.num)
    if s.den.is_one():
        return num
    if len(s.num) > 1 or "/" in num:
        num = f"({num})"
    den = format_poly(s.den)
    if not _is_single_atom(s.den):
        den = f"({den})"
    return f"{num}/{den}"
