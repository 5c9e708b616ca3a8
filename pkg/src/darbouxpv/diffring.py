"""Differential polynomials F{Y_ij} in the indeterminates Y_{ij,k}.

D(Y_{ij,k}) = Y_{ij,k+1}; variables of any order are created on demand.
"""

from __future__ import annotations

from typing import Dict, Iterable, NamedTuple, Optional, Tuple

from .scalar import ONE, QQ, ZERO, FieldConfig, Scalar, scalar_derive


class DiffVar(NamedTuple):
    """Y_{ij,k}.  Tuple order is the lexicographic order on (i, j, k)."""

    i: int
    j: int
    k: int = 0

    def shifted(self) -> "DiffVar":
        return DiffVar(self.i, self.j, self.k + 1)

    def __str__(self) -> str:
        if self.k:
            return f"Y[{self.i},{self.j};{self.k}]"
        return f"Y[{self.i},{self.j}]"


# A monomial is a tuple of (DiffVar, exponent) pairs sorted by DiffVar.
Monomial = Tuple[Tuple[DiffVar, int], ...]

ONE_MONOMIAL: Monomial = ()


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def mono_divide(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """a / b when b divides a, else None."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items()))


def mono_key(a: Monomial):
    """Sort key for graded lex with larger DiffVars more significant."""
    return (mono_degree(a), tuple(sorted(a, reverse=True)))


class DiffPoly:
    """Sparse polynomial in the Y_{ij,k} with :class:`Scalar` coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Monomial, Scalar]] = None):
        self.terms: Dict[Monomial, Scalar] = (
            {m: c for m, c in terms.items() if c} if terms else {}
        )

    @classmethod
    def const(cls, c) -> "DiffPoly":
        c = Scalar(c)
        return cls._raw({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def var(cls, i: int, j: int, k: int = 0) -> "DiffPoly":
        return cls._raw({((DiffVar(i, j, k), 1),): ONE})

    @classmethod
    def _raw(cls, terms) -> "DiffPoly":
        p = object.__new__(cls)
        p.terms = terms
        return p

    # -- inspection ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def constant_value(self) -> Scalar:
        """The Scalar this polynomial equals; raises if Y's occur."""
        if not self.is_constant():
            raise ValueError(f"{self} is not an element of F")
        return self.terms.get(ONE_MONOMIAL, ZERO)

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "DiffPoly":
        return DiffPoly._raw({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "DiffPoly":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return DiffPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "DiffPoly":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "DiffPoly":
        return (-self) + other

    def __mul__(self, other) -> "DiffPoly":
        if isinstance(other, (Scalar, int)):
            other = Scalar(other)
            if not other:
                return DiffPoly()
            return DiffPoly._raw({m: c * other for m, c in self.terms.items()})
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return dp_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "DiffPoly":
        out = DiffPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"DiffPoly({self})"

    def __str__(self) -> str:
        from .expr import format_diffpoly

        return format_diffpoly(self)


def _lift(x):
    if isinstance(x, DiffPoly):
        return x
    if isinstance(x, (Scalar, int)):
        return DiffPoly.const(x)
    return NotImplemented


def dp_mul(p: DiffPoly, q: DiffPoly) -> DiffPoly:
    if not p.terms or not q.terms:
        return DiffPoly()
    out: Dict[Monomial, Scalar] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = mono_mul(m1, m2)
            c = c1 * c2
            s = out.get(m)
            out[m] = c if s is None else s + c
    return DiffPoly(out)


def _derive_monomial(m: Monomial) -> Iterable[Tuple[Monomial, int]]:
    # Leibniz on a power product: sum over variables of e * v^(e-1) * v'
    for v, e in m:
        rest = dict(m)
        if e == 1:
            del rest[v]
        else:
            rest[v] = e - 1
        w = v.shifted()
        rest[w] = rest.get(w, 0) + 1
        yield tuple(sorted(rest.items())), e


def dp_derive(p: DiffPoly, cfg: FieldConfig = QQ) -> DiffPoly:
    """D(p): derivative of the coefficients plus the shift Y_{ij,k} -> Y_{ij,k+1}."""
    out: Dict[Monomial, Scalar] = {}

    def add(m, c):
        s = out.get(m)
        out[m] = c if s is None else s + c

    for m, c in p.terms.items():
        dc = scalar_derive(c, cfg)
        if dc:
            add(m, dc)
        for dm, e in _derive_monomial(m):
            add(dm, c * e)
    return DiffPoly(out)


def dp_exact_divide(p: DiffPoly, d: DiffPoly) -> Optional[DiffPoly]:
    """q with p = q*d, or None when d does not divide p.

    Single-divisor division under graded lex: d | p exactly when the
    remainder vanishes, so the first leading term not divisible by lt(d)
    settles the answer.
    """
    if not d.terms:
        raise ZeroDivisionError("division by the zero differential polynomial")
    if not p.terms:
        return DiffPoly()
    lm_d, lc_d = max(d.terms.items(), key=lambda t: mono_key(t[0]))
    if len(d.terms) == 1:
        out = {}
        for m, c in p.terms.items():
            qm = mono_divide(m, lm_d)
            if qm is None:
                return None
            out[qm] = c / lc_d
        return DiffPoly._raw(out)
    rem = dict(p.terms)
    quot: Dict[Monomial, Scalar] = {}
    while rem:
        lm = max(rem, key=mono_key)
        qm = mono_divide(lm, lm_d)
        if qm is None:
            return None
        qc = rem[lm] / lc_d
        quot[qm] = qc
        for m, c in d.terms.items():
            mm = mono_mul(qm, m)
            s = rem.get(mm, ZERO) - qc * c
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return DiffPoly._raw(quot)


def dp_leader(p: DiffPoly) -> DiffVar:
    """Largest Y_{ij,k} occurring in p under the (i, j, k) lex order."""
    vs = p.variables()
    if not vs:
        raise ValueError("a constant has no leader")
    return max(vs)


def Y(i: int, j: int, k: int = 0) -> DiffPoly:
    return DiffPoly.var(i, j, k)
