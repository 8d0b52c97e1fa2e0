"""Cohomology dimensions: line bundles and Omega^p(l) on P^n (Bott), spectra
of stable rank-3 bundles on P^3, and a few closed-form numerical identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping, NamedTuple, Sequence

__all__ = [
    "UNDETERMINED",
    "CohomologyTable",
    "line_cohomology",
    "bott",
    "Spectrum",
    "spectrum_h1",
    "spectrum_h2",
    "enumerate_spectra",
    "EXCLUDED_SPECTRA",
    "H1Values",
    "h1_formulas",
    "h1_of_f_bound",
    "h0fm1_bound_c2_11",
    "bml_bound",
    "koszul_gg_threshold",
    "koszul_kernel_gg",
]

#: marker for a cohomology entry the available data does not determine
UNDETERMINED = None


def _binom(a: int, b: int) -> int:
    """C(a, b), zero unless 0 <= b <= a."""
    return comb(a, b) if 0 <= b <= a else 0


@dataclass(frozen=True)
class CohomologyTable:
    """h^q of the twists E(l), l_min <= l <= l_max; entries may be UNDETERMINED."""

    n: int
    lmin: int
    lmax: int
    dims: Mapping[tuple[int, int], int | None] = field(default_factory=dict)

    def __post_init__(self):
        if self.lmin > self.lmax:
            raise ValueError(f"empty window [{self.lmin}, {self.lmax}]")
        for (q, l), v in self.dims.items():
            if v is not None and v < 0:
                raise ValueError(f"negative dimension h^{q}(E({l})) = {v}")

    def __call__(self, q: int, l: int) -> int | None:
        if not self.lmin <= l <= self.lmax:
            raise KeyError(f"twist {l} outside window [{self.lmin}, {self.lmax}]")
        return self.dims.get((q, l), 0) if 0 <= q <= self.n else 0

    @property
    def window(self) -> range:
        return range(self.lmin, self.lmax + 1)

    def chi(self, l: int) -> int | None:
        vals = [self(q, l) for q in range(self.n + 1)]
        if any(v is None for v in vals):
            return None
        return sum((-1) ** q * v for q, v in enumerate(vals))

    def fully_determined(self) -> bool:
        return all(self(q, l) is not None for q in range(self.n + 1) for l in self.window)

    def rows(self) -> list[list[int | None]]:
        """rows()[q][l - lmin] = h^q(E(l))."""
        return [[self(q, l) for l in self.window] for q in range(self.n + 1)]

    @classmethod
    def build(cls, n: int, lmin: int, lmax: int, fn) -> CohomologyTable:
        """Table from fn(l) -> sequence of n+1 dims (or None entries)."""
        dims = {}
        for l in range(lmin, lmax + 1):
            for q, v in enumerate(fn(l)):
                dims[(q, l)] = v
        return cls(n, lmin, lmax, dims)


def line_cohomology(n: int, a: int) -> tuple[int, ...]:
    """(h^0, ..., h^n) of O(a) on P^n."""
    out = [0] * (n + 1)
    if a >= 0:
        out[0] = comb(a + n, n)
    elif a <= -n - 1:
        out[n] = comb(-a - 1, n)
    return tuple(out)


def bott(n: int, p: int, l: int) -> tuple[int, ...]:
    """(h^0, ..., h^n) of Omega^p(l) on P^n, by Bott's formula."""
    if not 0 <= p <= n:
        raise ValueError(f"p = {p} out of range for P^{n}")
    out = [0] * (n + 1)
    if l == 0:
        out[p] = 1
    elif l > p:
        out[0] = _binom(l + n - p, l) * _binom(l - 1, p)
    elif l < p - n:
        out[n] = _binom(p - l, -l) * _binom(-l - 1, n - p)
    return tuple(out)


# -- spectra -------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Weakly decreasing integers k_1 >= ... >= k_m."""

    k: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if any(a < b for a, b in zip(self.k, self.k[1:])):
            raise ValueError(f"spectrum {self.k} is not weakly decreasing")

    def __len__(self) -> int:
        return len(self.k)

    def connected_above(self) -> bool:
        """If some k >= 0 occurs, then so do 0, 1, ..., k."""
        s = set(self.k)
        return all(j in s for k in s if k >= 0 for j in range(0, k + 1))

    def connected_below(self) -> bool:
        """If some k <= -1 occurs, then so do -1, -2, ..., k."""
        s = set(self.k)
        return all(j in s for k in s if k <= -1 for j in range(k, 0))

    def minus_one_twice(self) -> bool:
        """If 0 does not occur, -1 occurs at least twice (vacuous for empty)."""
        return 0 in self.k or self.k.count(-1) >= 2 or not self.k

    def _strict_drop(self) -> int | None:
        """First i (1-based, 2 <= i <= m-1) with -1 >= k_{i-1} > k_i > k_{i+1}."""
        k = self.k
        for i in range(2, len(k)):
            if -1 >= k[i - 2] > k[i - 1] > k[i]:
                return i
        return None

    def tail_condition(self) -> bool:
        """After a double strict drop below -1 the spectrum stays strictly decreasing."""
        i = self._strict_drop()
        if i is None:
            return True
        tail = self.k[i:]
        return all(a > b for a, b in zip(tail, tail[1:]))

    def unstable_plane_order(self) -> int | None:
        """-k_m when the shape forces an unstable plane, else None."""
        return -self.k[-1] if self._strict_drop() is not None else None

    def is_admissible(self) -> bool:
        return self.connected_above() and self.connected_below() and self.minus_one_twice()

    def c2(self) -> int:
        return len(self.k)

    def c3(self) -> int:
        return -2 * sum(self.k) - len(self.k)


def spectrum_h1(s: Spectrum, l: int) -> int:
    """h^1(G(l)) = sum max(k_i + l + 2, 0), valid for l <= -1."""
    if l > -1:
        raise ValueError(f"h^1 from the spectrum is only determined for l <= -1, got {l}")
    return sum(max(k + l + 2, 0) for k in s.k)


def spectrum_h2(s: Spectrum, l: int) -> int:
    """h^2(G(l)) = sum max(-k_i - l - 2, 0), valid for l >= -2."""
    if l < -2:
        raise ValueError(f"h^2 from the spectrum is only determined for l >= -2, got {l}")
    return sum(max(-k - l - 2, 0) for k in s.k)


EXCLUDED_SPECTRA = frozenset(
    {(1, 0, -1), (0, -1, -2, -2), (1, 0, -1, -2), (1, 0, -1, -1)}
)


def enumerate_spectra(c2g: int, c3g: int, nonpositive: bool = False) -> list[Spectrum]:
    """Spectra of a stable rank-3 G with c_1 = -1, c_2 = c2g, c_3 = c3g.

    Entries lie in [-2, 1]; the admissibility rules and the list of excluded
    spectra are applied. ``nonpositive`` adds the filter k_1 <= 0.
    Output is in lexicographically decreasing order.
    """
    if not 1 <= c2g <= 4:
        raise ValueError(f"c2(G) = {c2g} outside the supported range 1..4")
    if (c3g + c2g) % 2:
        raise ValueError(f"c3(G) + c2(G) = {c3g + c2g} must be even")
    target = -(c3g + c2g) // 2
    top = 0 if nonpositive else 1
    out = []
    for k in _decreasing(c2g, top, -2):
        if sum(k) != target or k in EXCLUDED_SPECTRA:
            continue
        s = Spectrum(k)
        if s.is_admissible():
            out.append(s)
    return out


def _decreasing(m: int, hi: int, lo: int) -> Iterable[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    for first in range(hi, lo - 1, -1):
        for rest in _decreasing(m - 1, first, lo):
            yield (first,) + rest


# -- closed-form identities ----------------------------------------------------


class H1Values(NamedTuple):
    h1_fm2: Fraction
    h1_fm1: Fraction
    consistent: bool


def h1_formulas(c2: int, c3: int, h0_fm1: int) -> H1Values:
    """h^1(F(-2)) and h^1(F(-1)) for the rank-r F on P^3 with c_1 = 5.

    h^1(F(-2)) = (5(c2 - 8) - c3) / 2 and
    h^1(F(-1)) = (7(c2 - 10) - c3) / 2 + h^0(F(-1)).
    ``consistent`` is False when either value is negative.
    """
    if (c3 - c2) % 2:
        raise ValueError(f"parity violation: c3 = {c3} and c2 = {c2} differ mod 2")
    a = Fraction(5 * (c2 - 8) - c3, 2)
    b = Fraction(7 * (c2 - 10) - c3, 2) + h0_fm1
    return H1Values(a, b, a >= 0 and b >= 0)


def h1_of_f_bound(h1_fm1: int) -> int:
    """Upper bound max(h^1(F(-1)) - 3, 0) for h^1(F)."""
    return max(h1_fm1 - 3, 0)


def h0fm1_bound_c2_11(c3: int) -> int:
    """max((c3 - 7) / 2, 1): upper bound for h^0(F(-1)) when c2 = 11."""
    if c3 % 2 == 0:
        raise ValueError(f"c3 = {c3} must be odd when c2 = 11")
    return max((c3 - 7) // 2, 1)


def bml_bound(a: int, b: int, c: int, r: int) -> bool:
    """Can an a-dimensional space of b x c matrices have all nonzero members of rank >= r?

    Necessary condition a <= (b - r + 1)(c - r + 1).
    """
    if not 1 <= r <= min(b, c):
        raise ValueError(f"r = {r} must satisfy 1 <= r <= min(b, c) = {min(b, c)}")
    return a <= (b - r + 1) * (c - r + 1)


def koszul_gg_threshold(degrees: Sequence[int], n: int | None = None) -> int:
    """For K = Ker(sum O(-d_i) -> O) on P^n, K(l) is globally generated iff l >= d_{n-1} + d_n."""
    d = sorted(int(x) for x in degrees)
    if n is None:
        n = len(d) - 1
    if len(d) != n + 1:
        raise ValueError(f"need n + 1 = {n + 1} degrees on P^{n}, got {len(d)}")
    if n < 1 or any(x <= 0 for x in d):
        raise ValueError("degrees must be positive and n >= 1")
    return d[n - 1] + d[n]


def koszul_kernel_gg(degrees: Sequence[int], l: int, n: int | None = None) -> bool:
    return l >= koszul_gg_threshold(degrees, n)
