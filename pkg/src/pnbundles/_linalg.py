"""Exact linear algebra over QQ, backed by sympy's DomainMatrix."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix


def _to_qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def domain_matrix(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    return DomainMatrix([[_to_qq(x) for x in r] for r in rows], (len(rows), ncols), QQ)


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows or (ncols == 0) or not len(rows[0]):
        return 0
    return domain_matrix(rows, ncols).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0}, as a list of coordinate vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = domain_matrix(rows, ncols).nullspace()
    return [[_to_fraction(x) for x in row] for row in ns.to_list()]


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    inv = domain_matrix(rows).inv()
    return [[_to_fraction(x) for x in row] for row in inv.to_list()]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank(list(vectors)) == rank(list(vectors) + [list(v)])
