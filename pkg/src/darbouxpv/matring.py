"""The ring R = F{Y_ij}[X_ij], its specialization F[X_ij], and the matrix derivation.

X-monomials are plain tuples of n*n exponents in the index order
(1,1), (1,2), ..., (n,n).  They are compared by degrevlex: total degree
first, and on a tie the monomial whose rightmost differing exponent is
larger is the smaller one.  For n = 2 this makes X12*X21 the leading power
product of the determinant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Sequence, Tuple

from .diffring import DiffPoly, DiffVar, dp_derive
from .linalg import rank
from .scalar import QQ, ZERO, FieldConfig, Scalar, scalar_derive

XMonomial = Tuple[int, ...]


def xorder_key(a: XMonomial):
    """Ascending sort key for the degrevlex order on X-monomials."""
    return (sum(a), tuple(-e for e in reversed(a)))


def xorder_compare(a: XMonomial, b: XMonomial) -> int:
    """-1, 0 or 1 as a is smaller than, equal to or greater than b."""
    if len(a) != len(b):
        raise ValueError(f"monomials of different size: {len(a)} vs {len(b)}")
    ka, kb = xorder_key(a), xorder_key(b)
    return (ka > kb) - (ka < kb)


def x_index(n: int, i: int, j: int) -> int:
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"X[{i},{j}] outside 1..{n}")
    return (i - 1) * n + (j - 1)


def unit_monomial(n: int, i: int, j: int) -> XMonomial:
    e = [0] * (n * n)
    e[x_index(n, i, j)] = 1
    return tuple(e)


def x_divides(a: XMonomial, b: XMonomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


class RPoly:
    """Polynomial in the X_ij whose coefficients are :class:`DiffPoly`.

    A value with only Y-free coefficients is an element of F[X_ij].
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Optional[Dict[XMonomial, DiffPoly]] = None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.terms: Dict[XMonomial, DiffPoly] = {}
        for m, c in (terms or {}).items():
            if len(m) != n * n:
                raise ValueError(f"monomial {m} has the wrong length for n={n}")
            if not isinstance(c, DiffPoly):
                c = DiffPoly.const(c)
            if c:
                self.terms[tuple(m)] = c

    @classmethod
    def _raw(cls, n: int, terms) -> "RPoly":
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        return p

    @classmethod
    def const(cls, n: int, c) -> "RPoly":
        if not isinstance(c, DiffPoly):
            c = DiffPoly.const(c)
        return cls._raw(n, {(0,) * (n * n): c} if c else {})

    @classmethod
    def x(cls, n: int, i: int, j: int) -> "RPoly":
        return cls._raw(n, {unit_monomial(n, i, j): DiffPoly.const(1)})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int], coeff=1) -> "RPoly":
        return cls(n, {tuple(exps): coeff})

    # -- inspection ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_y_free(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def is_scalar(self) -> bool:
        """True when the value lies in F{Y} (no X occurs)."""
        return all(not any(m) for m in self.terms)

    def x_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def coefficient(self, alpha: XMonomial) -> DiffPoly:
        return self.terms.get(tuple(alpha), DiffPoly())

    def sorted_terms(self):
        """Terms in descending term order."""
        return sorted(self.terms.items(), key=lambda t: xorder_key(t[0]), reverse=True)

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, RPoly):
            if other.n != self.n:
                raise ValueError(f"mixing n={self.n} with n={other.n}")
            return other
        if isinstance(other, Fraction):
            other = Scalar(other)
        if isinstance(other, (DiffPoly, Scalar, int)):
            return RPoly.const(self.n, other)
        return NotImplemented

    def __neg__(self) -> "RPoly":
        return RPoly._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "RPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
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
        return RPoly._raw(self.n, out)

    __radd__ = __add__

    def __sub__(self, other) -> "RPoly":
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RPoly":
        return (-self) + other

    def __mul__(self, other) -> "RPoly":
        if isinstance(other, (Scalar, int, DiffPoly)):
            if not other:
                return RPoly(self.n)
            return RPoly(self.n, {m: c * other for m, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[XMonomial, DiffPoly] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                c = c1 * c2
                s = out.get(m)
                out[m] = c if s is None else s + c
        return RPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "RPoly":
        if e < 0:
            raise ValueError("negative power of an RPoly")
        out = RPoly.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, RPoly):
            return self.n == other.n and self.terms == other.terms
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"RPoly(n={self.n}, {self})"

    def __str__(self) -> str:
        from .expr import format_expr

        return format_expr(self)


def x_var(n: int, i: int, j: int) -> RPoly:
    return RPoly.x(n, i, j)


def det_x(n: int) -> RPoly:
    """det[X_ij] expanded by the Leibniz permutation formula."""
    if n < 1:
        raise ValueError("n must be positive")
    terms = {}
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        e = [0] * (n * n)
        for i, j in enumerate(perm):
            e[i * n + j] = 1
        terms[tuple(e)] = DiffPoly.const(-1 if inversions & 1 else 1)
    return RPoly._raw(n, terms)


# -- derivations ---------------------------------------------------------------

Matrix = Tuple[Tuple[Scalar, ...], ...]


def _as_matrix(rows, n: Optional[int] = None) -> Matrix:
    mat = tuple(tuple(Scalar(x) for x in row) for row in rows)
    size = len(mat)
    if n is not None and size != n:
        raise ValueError(f"expected a {n}x{n} matrix, got {size} rows")
    for row in mat:
        if len(row) != size:
            raise ValueError("matrix is not square")
    return mat


@dataclass(frozen=True)
class DerivationSpec:
    """How D acts on the X_ij.

    ``generic``: D(X) = Y*X with symbolic Y, or D(X) = sum_st Y_st*(M_st*X)
    for an explicit basis M_11, M_12, ... of n*n matrices.  The k-th basis
    matrix is paired with the k-th Y label in the order (1,1), (1,2), ....
    ``specialized``: D(X) = f*X for a matrix f over F.
    """

    kind: str
    n: int
    basis: Optional[Tuple[Matrix, ...]] = None
    f: Optional[Matrix] = None

    def __post_init__(self):
        if self.kind not in ("generic", "specialized"):
            raise ValueError(f"unknown derivation kind {self.kind!r}")
        if self.kind == "generic" and self.f is not None:
            raise ValueError("a generic derivation takes no f")
        if self.kind == "specialized":
            if self.f is None:
                raise ValueError("a specialized derivation needs f")
            if self.basis is not None:
                raise ValueError("a specialized derivation takes no basis")

    @classmethod
    def generic(cls, n: int) -> "DerivationSpec":
        return cls("generic", n)

    @classmethod
    def specialized(cls, f) -> "DerivationSpec":
        mat = _as_matrix(f)
        return cls("specialized", len(mat), f=mat)

    @property
    def is_elementary(self) -> bool:
        return self.kind == "specialized" or self.basis is None

    def y_label(self, k: int) -> Tuple[int, int]:
        """(s, t) label of the k-th basis direction, 0-based k."""
        return divmod(k, self.n)[0] + 1, k % self.n + 1

    def coefficient_matrix(self):
        """n x n matrix W with D(X) = W*X when that form exists.

        Entries are DiffPolys: Y_il for the elementary generic case,
        constants f_il for the specialized case, and sum_st Y_st*(M_st)_il
        for an explicit basis.
        """
        n = self.n
        if self.kind == "specialized":
            return [[DiffPoly.const(self.f[i][l]) for l in range(n)] for i in range(n)]
        if self.basis is None:
            return [[DiffPoly.var(i + 1, l + 1) for l in range(n)] for i in range(n)]
        W = [[DiffPoly() for _ in range(n)] for _ in range(n)]
        for k, M in enumerate(self.basis):
            s, t = self.y_label(k)
            ys = DiffPoly.var(s, t)
            for i in range(n):
                for l in range(n):
                    if M[i][l]:
                        W[i][l] = W[i][l] + ys * M[i][l]
        return W


def derivation_from_basis(matrices: Sequence) -> DerivationSpec:
    """Generic derivation D(X) = sum_st Y_st*(M_st*X) for a basis of gl_n.

    The matrices must have rational entries and be linearly independent
    over Q.  The elementary basis E(11), E(12), ... gives back the
    standard generic derivation.
    """
    mats = tuple(_as_matrix(M) for M in matrices)
    if not mats:
        raise ValueError("empty basis")
    n = len(mats[0])
    if len(mats) != n * n:
        raise ValueError(f"a basis of gl_{n} has {n * n} matrices, got {len(mats)}")
    rows = []
    for M in mats:
        if len(M) != n:
            raise ValueError("basis matrices of different sizes")
        row = []
        for r in M:
            for x in r:
                if not x.is_constant():
                    raise ValueError(f"basis entry {x} is not a rational constant")
                row.append(x.to_fraction())
        rows.append(row)
    if rank(rows) != n * n:
        raise ValueError("basis matrices are linearly dependent over Q")
    elementary = all(
        rows[k][c] == (1 if c == k else 0) for k in range(n * n) for c in range(n * n)
    )
    if elementary:
        return DerivationSpec.generic(n)
    return DerivationSpec("generic", n, basis=mats)


def determinant_cofactor(spec: DerivationSpec) -> DiffPoly:
    """D(det X)/det X, the trace of the coefficient matrix."""
    W = spec.coefficient_matrix()
    out = DiffPoly()
    for i in range(spec.n):
        out = out + W[i][i]
    return out


@lru_cache(maxsize=8192)
def _diff_xmonomial(alpha: XMonomial, spec: DerivationSpec) -> RPoly:
    n = spec.n
    W = spec.coefficient_matrix()
    out: Dict[XMonomial, DiffPoly] = {}

    def add(m, c):
        s = out.get(m)
        out[m] = c if s is None else s + c

    if spec.is_elementary:
        diag = DiffPoly()
        for i in range(n):
            for j in range(n):
                a = alpha[i * n + j]
                if a:
                    diag = diag + W[i][i] * a
        if diag:
            add(alpha, diag)
        # shifted terms: X_ij -> X_lj for l != i
        for i in range(n):
            for j in range(n):
                a = alpha[i * n + j]
                if not a:
                    continue
                for l in range(n):
                    if l == i or not W[i][l]:
                        continue
                    e = list(alpha)
                    e[i * n + j] -= 1
                    e[l * n + j] += 1
                    add(tuple(e), W[i][l] * a)
    else:
        # Leibniz with D(X_ij) = sum_l W_il X_lj
        for i in range(n):
            for j in range(n):
                a = alpha[i * n + j]
                if not a:
                    continue
                for l in range(n):
                    if not W[i][l]:
                        continue
                    e = list(alpha)
                    e[i * n + j] -= 1
                    e[l * n + j] += 1
                    add(tuple(e), W[i][l] * a)
    return RPoly(n, out)


def diff_xmonomial(alpha: Sequence[int], spec: DerivationSpec) -> RPoly:
    """D(X^alpha); the X_ij carry no base-field part so no FieldConfig is needed."""
    alpha = tuple(alpha)
    if len(alpha) != spec.n * spec.n:
        raise ValueError(f"monomial of length {len(alpha)} for n={spec.n}")
    return _diff_xmonomial(alpha, spec)


def r_derive(p: RPoly, spec: DerivationSpec, cfg: FieldConfig = QQ) -> RPoly:
    """D(p) = sum D(p_alpha) X^alpha + p_alpha D(X^alpha)."""
    if p.n != spec.n:
        raise ValueError(f"polynomial has n={p.n}, derivation has n={spec.n}")
    out: Dict[XMonomial, DiffPoly] = {}

    def add(m, c):
        s = out.get(m)
        out[m] = c if s is None else s + c

    for alpha, c in p.terms.items():
        dc = dp_derive(c, cfg)
        if dc:
            add(alpha, dc)
        if any(alpha):
            for beta, w in _diff_xmonomial(alpha, spec).terms.items():
                add(beta, c * w)
    return RPoly(p.n, out)


def coeff_in_derivative(
    p: RPoly, alpha: Sequence[int], spec: DerivationSpec, cfg: FieldConfig = QQ
) -> DiffPoly:
    """Coefficient of X^alpha in D(p), read off p without differentiating it.

    Uses p'_alpha + p_alpha * sum alpha_ij Y_ii
    + sum_ij (alpha_ij + 1) sum_{l != i} p_{alpha + e_ij - e_lj} Y_il.
    """
    if spec.kind != "generic" or not spec.is_elementary:
        raise ValueError("the closed form needs the elementary generic derivation")
    n = spec.n
    alpha = tuple(alpha)
    pa = p.coefficient(alpha)
    out = dp_derive(pa, cfg)
    if pa:
        for i in range(n):
            s = sum(alpha[i * n : i * n + n])
            if s:
                out = out + pa * DiffPoly.var(i + 1, i + 1) * s
    for i in range(n):
        for j in range(n):
            for l in range(n):
                if l == i or not alpha[l * n + j]:
                    continue
                e = list(alpha)
                e[i * n + j] += 1
                e[l * n + j] -= 1
                c = p.coefficient(tuple(e))
                if c:
                    out = out + c * DiffPoly.var(i + 1, l + 1) * (alpha[i * n + j] + 1)
    return out


def leading_power_product(p: RPoly) -> Tuple[XMonomial, DiffPoly]:
    if not p:
        raise ValueError("the zero polynomial has no leading power product")
    m = max(p.terms, key=xorder_key)
    return m, p.terms[m]


def _y_free_terms(p: RPoly) -> Dict[XMonomial, Scalar]:
    if not p.is_y_free():
        raise ValueError("division is defined for Y-free polynomials only")
    return {m: c.constant_value() for m, c in p.terms.items()}


def _from_scalars(n: int, terms: Dict[XMonomial, Scalar]) -> RPoly:
    return RPoly._raw(n, {m: DiffPoly.const(c) for m, c in terms.items() if c})


def divide_reduce(p: RPoly, g: RPoly) -> Tuple[RPoly, RPoly]:
    """Multivariable division of p by g in F[X]: p = q*g + r, r reduced."""
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.n != g.n:
        raise ValueError("operands have different n")
    work = _y_free_terms(p)
    gt = _y_free_terms(g)
    lm_g = max(gt, key=xorder_key)
    lc_g = gt[lm_g]
    quot: Dict[XMonomial, Scalar] = {}
    rem: Dict[XMonomial, Scalar] = {}
    while work:
        lm = max(work, key=xorder_key)
        lc = work.pop(lm)
        if not x_divides(lm_g, lm):
            rem[lm] = lc
            continue
        qm = tuple(a - b for a, b in zip(lm, lm_g))
        qc = lc / lc_g
        quot[qm] = quot.get(qm, ZERO) + qc
        for m, c in gt.items():
            if m == lm_g:
                continue
            mm = tuple(a + b for a, b in zip(qm, m))
            s = work.get(mm, ZERO) - qc * c
            if s:
                work[mm] = s
            else:
                work.pop(mm, None)
    return _from_scalars(p.n, quot), _from_scalars(p.n, rem)


def is_reduced(r: RPoly, g: RPoly) -> bool:
    """No monomial of r is divisible by lp(g)."""
    lm_g, _ = leading_power_product(g)
    return not any(x_divides(lm_g, m) for m in r.terms)


# -- specialization ------------------------------------------------------------


def derivative_tower(f, cfg: FieldConfig = QQ):
    """Callable (i, j, k) -> k-th derivative of f_ij, memoised."""
    mat = _as_matrix(f)
    cache: Dict[DiffVar, Scalar] = {}

    def value(v: DiffVar) -> Scalar:
        got = cache.get(v)
        if got is not None:
            return got
        if v.k == 0:
            if not (1 <= v.i <= len(mat) and 1 <= v.j <= len(mat)):
                raise IndexError(f"{v} outside the {len(mat)}x{len(mat)} matrix f")
            got = mat[v.i - 1][v.j - 1]
        else:
            got = scalar_derive(value(DiffVar(v.i, v.j, v.k - 1)), cfg)
        cache[v] = got
        return got

    return value


def specialize_diffpoly(c: DiffPoly, value) -> Scalar:
    total = ZERO
    for mono, coeff in c.terms.items():
        term = coeff
        for v, e in mono:
            term = term * value(v) ** e
            if not term:
                break
        total = total + term
    return total


def specialize(p: RPoly, f, cfg: FieldConfig = QQ) -> RPoly:
    """Substitute Y_{ij,k} -> k-th derivative of f_ij."""
    value = derivative_tower(f, cfg)
    out = {}
    for m, c in p.terms.items():
        s = c.constant_value() if c.is_constant() else specialize_diffpoly(c, value)
        if s:
            out[m] = DiffPoly.const(s)
    return RPoly._raw(p.n, out)
