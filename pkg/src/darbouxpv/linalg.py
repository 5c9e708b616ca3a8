"""Exact determinants and nullspaces over generic commutative rings.

Entries only need ``+ - *`` and truthiness for zero tests.  The elimination
routines additionally need ``/``: exact division for :func:`det_bareiss` and
:func:`det_dodgson`, field division for :func:`det_gauss` and
:func:`nullspace`.
"""

from __future__ import annotations

from typing import Callable, List, Sequence


class DeterminantMismatch(ArithmeticError):
    """Two determinant algorithms disagreed on the same matrix."""


def _zero_like(x):
    return x - x


def _check_square(M: Sequence[Sequence]) -> int:
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    for row in M:
        if len(row) != n:
            raise ValueError("matrix is not square")
    return n


def det_cofactor(M: Sequence[Sequence]):
    """Cofactor (Laplace) expansion along rows, memoised on used columns.

    Division free.  Cost grows like 2^n, so this is meant for small n.
    """
    n = _check_square(M)
    zero = _zero_like(M[0][0])
    # partial[mask] = signed sum over placements of the first r rows into
    # the columns of mask
    partial = {}
    for c in range(n):
        if M[0][c]:
            partial[1 << c] = M[0][c]
    for r in range(1, n):
        row = M[r]
        nxt = {}
        for mask, val in partial.items():
            for c in range(n):
                if mask >> c & 1 or not row[c]:
                    continue
                term = row[c] * val
                # inversions against the columns already placed above
                if bin(mask >> (c + 1)).count("1") & 1:
                    term = -term
                key = mask | (1 << c)
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        partial = {k: v for k, v in nxt.items() if v}
        if not partial:
            return zero
    return partial.get((1 << n) - 1, zero)


def det_bareiss(M: Sequence[Sequence]):
    """Fraction-free Gaussian elimination (Bareiss), exact divisions only."""
    n = _check_square(M)
    A = [list(row) for row in M]
    zero = _zero_like(A[0][0])
    negate = False
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            for i in range(k + 1, n):
                if A[i][k]:
                    A[k], A[i] = A[i], A[k]
                    negate = not negate
                    break
            else:
                return zero
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                row_i[j] = num if prev is None else num / prev
        prev = akk
    d = A[n - 1][n - 1]
    return -d if negate else d


def det_gauss(M: Sequence[Sequence]):
    """Ordinary Gaussian elimination; entries must form a field."""
    n = _check_square(M)
    A = [list(row) for row in M]
    det = None
    negate = False
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k]), None)
        if p is None:
            return _zero_like(A[0][0])
        if p != k:
            A[k], A[p] = A[p], A[k]
            negate = not negate
        pivot = A[k][k]
        det = pivot if det is None else det * pivot
        for i in range(k + 1, n):
            if not A[i][k]:
                continue
            factor = A[i][k] / pivot
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                if row_k[j]:
                    row_i[j] = row_i[j] - factor * row_k[j]
    return -det if negate else det


def det_dodgson(M: Sequence[Sequence], fallback: Callable = det_cofactor):
    """Dodgson condensation.

    Each step divides by the interior of the matrix two steps back; when an
    interior entry is zero the condensation is undefined and ``fallback``
    is applied to the original matrix instead.
    """
    n = _check_square(M)
    if n == 1:
        return M[0][0]
    prev = None
    cur = [list(row) for row in M]
    while len(cur) > 1:
        size = len(cur)
        if prev is not None:
            for i in range(1, size + 1):
                for j in range(1, size + 1):
                    if not prev[i][j]:
                        return fallback(M)
        nxt = []
        for i in range(size - 1):
            row = []
            for j in range(size - 1):
                v = cur[i][j] * cur[i + 1][j + 1] - cur[i][j + 1] * cur[i + 1][j]
                if prev is not None:
                    v = v / prev[i + 1][j + 1]
                row.append(v)
            nxt.append(row)
        prev, cur = cur, nxt
    return cur[0][0]


def rref(M: Sequence[Sequence]):
    """Reduced row echelon form over a field.  Returns (rows, pivot_columns)."""
    A = [list(row) for row in M]
    if not A:
        return A, []
    ncols = len(A[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c]
        A[r] = [x / inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1])


def nullspace(M: Sequence[Sequence], ncols: int | None = None, one=None):
    """Basis of {v : M v = 0}, one vector per free column."""
    if not M:
        if ncols is None:
            raise ValueError("ncols is required for an empty matrix")
        if one is None:
            raise ValueError("one is required for an empty matrix")
        zero = one - one
        return [[one if i == c else zero for i in range(ncols)] for c in range(ncols)]
    A, pivots = rref(M)
    ncols = len(A[0])
    sample = A[0][0]
    zero = _zero_like(sample)
    if one is None:
        one = zero + 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(A, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis
