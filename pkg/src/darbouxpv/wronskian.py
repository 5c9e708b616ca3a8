"""Monomial bases T_k, wronskians W_k and truncated specialization checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .flat import checked_det
from .matring import DerivationSpec, RPoly, r_derive
from .scalar import QQ, FieldConfig, Scalar


@dataclass(frozen=True)
class MonomialBasis:
    """Monomials in t1..tm and the X_ij of total degree 1..k, in term order.

    ``exponents`` lists (t-exponents, X-exponents) pairs.  Elements are
    sorted by degree and, within a degree, descending degrevlex with
    t1 > ... > tm > X11 > ... > Xnn.
    """

    k: int
    n: int
    m: int
    exponents: Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]
    elements: Tuple[RPoly, ...] = field(compare=False)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def _basis_key(exps: Tuple[int, ...]):
    return (sum(exps), tuple(reversed(exps)))


def monomial_basis(k: int, n: int, cfg: FieldConfig = QQ) -> MonomialBasis:
    """T_k: all monomials of total degree 1..k; the constant 1 is excluded."""
    if k < 1:
        raise ValueError("k must be at least 1")
    m = cfg.m
    nvars = m + n * n
    exps = []
    for deg in range(1, k + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            exps.append(tuple(e))
    exps.sort(key=_basis_key)
    pairs = tuple((e[:m], e[m:]) for e in exps)
    return MonomialBasis(k, n, m, pairs, tuple(_element(n, te, xe) for te, xe in pairs))


def _element(n: int, texps, xexps) -> RPoly:
    return RPoly.monomial(n, xexps, Scalar.from_exponents(1, texps))


@dataclass
class WronskianReport:
    k: int
    basis_size: int
    determinant: RPoly
    is_zero: bool
    methods: Tuple[str, ...] = ()

    @property
    def passes(self) -> bool:
        return not self.is_zero


def wronskian_matrix(
    elements: Sequence[RPoly], spec: DerivationSpec, cfg: FieldConfig = QQ
) -> List[List[RPoly]]:
    """Row r holds the r-th derivatives of the elements, r = 0..len-1."""
    size = len(elements)
    cols = []
    for p in elements:
        if p.n != spec.n:
            raise ValueError(f"element has n={p.n}, derivation has n={spec.n}")
        col = [p]
        for _ in range(size - 1):
            col.append(r_derive(col[-1], spec, cfg))
        cols.append(col)
    return [[cols[c][r] for c in range(size)] for r in range(size)]


def wronskian_det(
    basis, spec: DerivationSpec, cfg: FieldConfig = QQ, methods=None
) -> WronskianReport:
    """W = det of the wronskian matrix, cross-checked by two algorithms.

    Raises :class:`~darbouxpv.linalg.DeterminantMismatch` if they disagree.
    """
    elements = basis.elements if isinstance(basis, MonomialBasis) else tuple(basis)
    k = basis.k if isinstance(basis, MonomialBasis) else 0
    W = wronskian_matrix(elements, spec, cfg)
    det, used = checked_det(W, methods)
    return WronskianReport(k, len(elements), det, not det, used)


def check_specialization(f, k_max: int, cfg: FieldConfig = QQ) -> List[WronskianReport]:
    """W_1..W_k_max under D(X) = f*X.

    The full criterion asks for every k; this only certifies levels up to
    k_max.  A candidate passes at level k_max when every report is nonzero.
    """
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    spec = DerivationSpec.specialized(f)
    return [
        wronskian_det(monomial_basis(k, spec.n, cfg), spec, cfg)
        for k in range(1, k_max + 1)
    ]


def passes(reports: Sequence[WronskianReport]) -> bool:
    return all(r.passes for r in reports)
