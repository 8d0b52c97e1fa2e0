"""Chern classes in the truncated Chow ring Z[h]/(h^{n+1}) of P^n.

A class is stored as its coefficient vector c_1..c_n; the total Chern class is
1 + c_1 h + ... + c_n h^n. Everything is exact: integers for Chern classes,
``Fraction`` for Chern characters, Todd classes and Riemann-Roch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import NamedTuple, Sequence

__all__ = [
    "ChernVector",
    "RationalChowClass",
    "FlaggedRational",
    "chern_mul",
    "chern_inv",
    "chern_dual",
    "chern_twist",
    "chern_character",
    "todd_class",
    "euler_characteristic",
    "p_functor",
    "schwarzenberger",
    "rank_formula",
    "rr_h2_minus_h1",
    "line_class",
    "trivial_class",
]


@dataclass(frozen=True)
class ChernVector:
    """Rank and Chern classes c_1..c_n of a (possibly formal) bundle on P^n.

    ``honest`` marks a class claimed to come from an actual bundle of the given
    rank; for those, c_i must vanish for i > rank.
    """

    n: int
    rank: int
    c: tuple[int, ...]
    honest: bool = False

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        if self.n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.n}")
        if self.rank < 0:
            raise ValueError(f"rank must be >= 0, got {self.rank}")
        if len(self.c) != self.n:
            raise ValueError(f"expected {self.n} Chern classes, got {len(self.c)}")
        if self.honest and any(self.c[i] for i in range(self.rank, self.n)):
            raise ValueError("honest class has nonzero c_i above its rank")

    @classmethod
    def of(cls, n: int, rank: int, c: Sequence[int] = (), honest: bool = False) -> ChernVector:
        """Build a class from a possibly short list of Chern classes (zero padded)."""
        c = list(c)
        if len(c) > n:
            if any(c[n:]):
                raise ValueError("Chern classes beyond degree n must vanish")
            c = c[:n]
        return cls(n, rank, tuple(c) + (0,) * (n - len(c)), honest)

    def total(self) -> tuple[int, ...]:
        return (1,) + self.c

    def __getitem__(self, i: int) -> int:
        """c_i, with c_0 = 1 and c_i = 0 beyond n."""
        if i == 0:
            return 1
        return self.c[i - 1] if 1 <= i <= self.n else 0

    def restrict(self, m: int) -> ChernVector:
        """Pull back to a linear P^m (m <= n): truncate the Chern classes."""
        if not 1 <= m <= self.n:
            raise ValueError(f"cannot restrict from P^{self.n} to P^{m}")
        return ChernVector(m, self.rank, self.c[:m], self.honest)


@dataclass(frozen=True)
class RationalChowClass:
    """An element a_0 + a_1 h + ... + a_n h^n of the rational Chow ring of P^n."""

    n: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        if len(self.a) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} coefficients, got {len(self.a)}")

    def __mul__(self, other: RationalChowClass) -> RationalChowClass:
        _check_n(self.n, other.n)
        return RationalChowClass(self.n, _mul(self.a, other.a, self.n))

    def degree(self) -> Fraction:
        """The integral over P^n, i.e. the coefficient of h^n."""
        return self.a[self.n]


class FlaggedRational(NamedTuple):
    value: Fraction
    integral: bool


def _flag(x: Fraction) -> FlaggedRational:
    return FlaggedRational(x, x.denominator == 1)


def _check_n(n: int, m: int) -> None:
    if n != m:
        raise ValueError(f"ambient dimension mismatch: P^{n} vs P^{m}")


def _mul(a: Sequence, b: Sequence, n: int) -> tuple:
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return tuple(out)


def _inv(a: Sequence, n: int) -> tuple:
    """Inverse of a power series with constant term 1, modulo h^{n+1}."""
    if a[0] != 1:
        raise ValueError("series must have constant term 1")
    out = [1] + [0] * n
    for k in range(1, n + 1):
        out[k] = -sum(a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1))
    return tuple(out)


def _pow(a: Sequence, e: int, n: int) -> tuple:
    out: tuple = (1,) + (0,) * n
    for _ in range(e):
        out = _mul(out, a, n)
    return out


def _exp_series(t, n: int) -> tuple[Fraction, ...]:
    """exp(t h) truncated."""
    return tuple(Fraction(t) ** k / factorial(k) for k in range(n + 1))


def trivial_class(n: int, rank: int = 0) -> ChernVector:
    return ChernVector(n, rank, (0,) * n, honest=True)


def line_class(n: int, a: int) -> ChernVector:
    """c(O(a)) = 1 + a h."""
    return ChernVector.of(n, 1, [a], honest=True)


def chern_mul(a: ChernVector, b: ChernVector) -> ChernVector:
    """Whitney product: the class of a direct sum."""
    _check_n(a.n, b.n)
    return ChernVector(a.n, a.rank + b.rank, _mul(a.total(), b.total(), a.n)[1:], a.honest and b.honest)


def chern_inv(a: ChernVector) -> ChernVector:
    """Truncated inverse of the total Chern class.

    The result is a formal class of rank 0: ranks are not invertible, so only
    the Chern part of ``chern_mul(a, chern_inv(a))`` is trivial.
    """
    return ChernVector(a.n, 0, _inv(a.total(), a.n)[1:])


def chern_dual(a: ChernVector) -> ChernVector:
    return ChernVector(a.n, a.rank, tuple((-1) ** i * x for i, x in enumerate(a.c, 1)), a.honest)


def chern_twist(a: ChernVector, t: int) -> ChernVector:
    """Class of E(t) for E of rank r: c_k = sum_i C(r-i, k-i) t^(k-i) c_i."""
    r = a.rank
    c = []
    for k in range(1, a.n + 1):
        c.append(sum(comb(r - i, k - i) * t ** (k - i) * a[i] for i in range(0, min(k, r) + 1)))
    # formal classes with c_i != 0 for i > r: go through ch(E) e^(th) instead
    if any(a[i] for i in range(r + 1, a.n + 1)):
        return _twist_via_character(a, t)
    return ChernVector(a.n, r, tuple(c), a.honest)


def _twist_via_character(a: ChernVector, t: int) -> ChernVector:
    ch = _mul(chern_character(a).a, _exp_series(t, a.n), a.n)
    return ChernVector(a.n, a.rank, _chern_from_character(ch, a.n), a.honest)


def _power_sums(a: ChernVector) -> list:
    """Newton: p_k = (-1)^(k-1) k c_k + sum_{i<k} (-1)^(i-1) c_i p_{k-i}."""
    p = [a.rank]
    for k in range(1, a.n + 1):
        s = (-1) ** (k - 1) * k * a[k]
        s += sum((-1) ** (i - 1) * a[i] * p[k - i] for i in range(1, k))
        p.append(s)
    return p


def _chern_from_character(ch: Sequence, n: int) -> tuple[int, ...]:
    """Invert Newton's identities: k c_k = sum_{i=1}^k (-1)^(i-1) p_i c_{k-i}."""
    p = [Fraction(ch[k]) * factorial(k) for k in range(n + 1)]
    c = [Fraction(1)]
    for k in range(1, n + 1):
        c.append(sum((-1) ** (i - 1) * p[i] * c[k - i] for i in range(1, k + 1)) / k)
    if any(x.denominator != 1 for x in c):
        raise ValueError("character does not come from an integral class")
    return tuple(int(x) for x in c[1:])


def chern_character(a: ChernVector) -> RationalChowClass:
    p = _power_sums(a)
    return RationalChowClass(a.n, tuple(Fraction(p[k], factorial(k)) for k in range(a.n + 1)))


def todd_class(n: int) -> RationalChowClass:
    """td(P^n) = (h / (1 - e^(-h)))^(n+1)."""
    # (1 - e^(-h)) / h = sum_k (-1)^k h^k / (k+1)!
    q = tuple(Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1))
    return RationalChowClass(n, _pow(_inv(q, n), n + 1, n))


def euler_characteristic(a: ChernVector, l: int = 0) -> int:
    """chi(E(l)) by Hirzebruch-Riemann-Roch."""
    ch = _mul(chern_character(a).a, _exp_series(l, a.n), a.n)
    chi = RationalChowClass(a.n, ch) * todd_class(a.n)
    value = chi.degree()
    if value.denominator != 1:
        raise ValueError(f"non-integral Euler characteristic {value}: inconsistent class")
    return int(value)


def p_functor(a: ChernVector, h0: int | None = None) -> ChernVector:
    """Chern classes of P(E), from c(P(E)) = 1 / c(E^dual).

    The rank of P(E) is h^0(E) - rank(E). When ``h0`` is omitted it is taken to
    be chi(E), which is h^0(E) when the higher cohomology of E vanishes; if that
    is not a non-negative integer the result is a formal class of rank 0.
    """
    c = _inv(chern_dual(a).total(), a.n)[1:]
    if h0 is None:
        try:
            h0 = euler_characteristic(a)
        except ValueError:
            h0 = None
        if h0 is None or h0 < a.rank:
            return ChernVector(a.n, 0, c)
    elif h0 < a.rank:
        raise ValueError(f"h0 = {h0} is smaller than the rank {a.rank}")
    return ChernVector(a.n, h0 - a.rank, c)


def _c1234(c) -> tuple[int, int, int, int]:
    if isinstance(c, ChernVector):
        if c.n < 4:
            raise ValueError("need Chern classes up to c_4")
        return c[1], c[2], c[3], c[4]
    c = tuple(int(x) for x in c) + (0,) * 4
    return c[0], c[1], c[2], c[3]


def schwarzenberger(c) -> bool:
    """Mod-12 Schwarzenberger congruence plus c_3 = c_1 c_2 mod 2, on P^4 data.

    Accepts a ChernVector (n >= 4, using c_1..c_4) or a sequence (c_1, ..., c_4).
    """
    c1, c2, c3, c4 = _c1234(c)
    mod12 = ((2 * c1 + 3) * (c3 - c1 * c2) + c2 * c2 + c2 - 2 * c4) % 12 == 0
    parity = (c3 - c1 * c2) % 2 == 0
    return mod12 and parity


def rank_formula(c2: int, c3: int, c4: int, h2_dual: int = 0) -> FlaggedRational:
    """r = (5 c_3 + 2 c_4 - c_2 (c_2 - 10)) / 12 + h^2(E^dual) for c_1 = 5 on P^4."""
    return _flag(Fraction(5 * c3 + 2 * c4 - c2 * (c2 - 10), 12) + h2_dual)


def rr_h2_minus_h1(c2: int, c3: int, c4: int, c1: int = 5) -> FlaggedRational:
    """h^2(E(-3)) - h^1(E(-3)) on P^4, from Riemann-Roch."""
    chi_line = euler_characteristic(line_class(4, c1 - 3))
    return _flag(chi_line + Fraction((2 * c1 - 3) * (c3 - c1 * c2) + c2 * c2 + c2 - 2 * c4, 12))
