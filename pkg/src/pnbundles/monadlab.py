"""Bundle expressions and short complexes on P^n.

A ``BundleExpr`` is built from O(a), Omega^p(t), T(-1), P(O(b)), duals, twists,
multiples and direct sums; its rank, Chern classes and, through Bott's
formula, its cohomology are derived on demand for a given n. A ``ComplexExpr``
is a short complex of such expressions whose only cohomology sits in degree 0;
its cohomology bundle gets rank and Chern classes from the alternating sum and,
where vanishing forces them, cohomology dimensions from the long exact
sequences. Maps are never stored: entries that depend on an actual map are
reported as UNDETERMINED.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb
from typing import Mapping, NamedTuple, Sequence, Union

from .chowring import (
    ChernVector,
    chern_dual,
    chern_inv,
    chern_mul,
    chern_twist,
    line_class,
    p_functor,
    schwarzenberger,
    trivial_class,
)
from .cohomtab import UNDETERMINED, CohomologyTable, bott, line_cohomology

__all__ = [
    "BundleExpr",
    "Line",
    "Omega",
    "TangentTwist",
    "PofLine",
    "Dual",
    "Twist",
    "Multiple",
    "Sum",
    "parse_bundle",
    "ComplexExpr",
    "ExprData",
    "expr_data",
    "bundle_class",
    "bundle_cohomology",
    "complex_cohomology_bundle",
    "monad_cohomology_table",
    "CatalogEntry",
    "named_bundle_catalog",
]

Dims = tuple  # (h^0, ..., h^n), entries int or None


class BundleExpr:
    """Base class; subclasses are frozen dataclasses."""

    def validate(self, n: int) -> None:
        for child in self.children():
            child.validate(n)

    def children(self) -> tuple[BundleExpr, ...]:
        return ()

    def rank(self, n: int) -> int:
        return self.chern(n).rank

    def chern(self, n: int) -> ChernVector:
        raise NotImplementedError

    def cohomology(self, n: int, l: int = 0) -> Dims:
        """(h^0, ..., h^n) of this bundle twisted by l."""
        raise NotImplementedError

    def __add__(self, other: BundleExpr) -> Sum:
        return Sum(_flatten((self, other)))


def _flatten(terms) -> tuple[BundleExpr, ...]:
    out = []
    for t in terms:
        out.extend(t.terms if isinstance(t, Sum) else (t,))
    return tuple(out)


def _add_dims(a: Dims, b: Dims) -> Dims:
    return tuple(None if x is None or y is None else x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class Line(BundleExpr):
    a: int

    def chern(self, n):
        return line_class(n, self.a)

    def cohomology(self, n, l=0):
        return line_cohomology(n, self.a + l)

    def __str__(self):
        return f"O({self.a})"


@dataclass(frozen=True)
class Omega(BundleExpr):
    """Omega^p(t)."""

    p: int
    t: int = 0

    def validate(self, n):
        if not 0 <= self.p <= n:
            raise ValueError(f"Omega^{self.p} is not defined on P^{n}")

    def chern(self, n):
        self.validate(n)
        # Koszul: Omega^p = Lambda^p V* (-p) - Omega^{p-1} in K-theory
        c = trivial_class(n, 0)
        for i in range(self.p + 1):
            term = _power(line_class(n, -i), comb(n + 1, i))
            c = chern_mul(c, term) if (self.p - i) % 2 == 0 else chern_mul(c, chern_inv(term))
        c = ChernVector(n, comb(n, self.p), c.c, honest=True)
        return chern_twist(c, self.t)

    def cohomology(self, n, l=0):
        self.validate(n)
        return bott(n, self.p, self.t + l)

    def __str__(self):
        return f"Om({self.p},{self.t})"


@dataclass(frozen=True)
class TangentTwist(BundleExpr):
    """T(-1) = Omega^{n-1}(n)."""

    def chern(self, n):
        c = chern_inv(line_class(n, -1))
        return ChernVector(n, n, c.c, honest=True)

    def cohomology(self, n, l=0):
        return bott(n, n - 1, n + l)

    def __str__(self):
        return "T(-1)"


@dataclass(frozen=True)
class PofLine(BundleExpr):
    """P(O(b)): the dual of the kernel of H^0(O(b)) (x) O -> O(b)."""

    b: int

    def validate(self, n):
        if self.b < 0:
            raise ValueError(f"P(O({self.b})) needs b >= 0")

    def chern(self, n):
        self.validate(n)
        c = chern_inv(line_class(n, -self.b))
        rank = comb(n + self.b, self.b) - 1
        return ChernVector(n, rank, c.c if rank else (0,) * n, honest=True)

    def cohomology(self, n, l=0):
        # 0 -> O(l-b) -> H^0(O(b))* (x) O(l) -> P(O(b))(l) -> 0; the map on H^0 is
        # injective and on H^n it is dual to the surjective multiplication map
        self.validate(n)
        big = comb(n + self.b, self.b)
        ha = line_cohomology(n, l - self.b)
        hb = tuple(big * x for x in line_cohomology(n, l))
        ranks = [0] * (n + 1)
        ranks[0] = ha[0]
        if hb[n]:
            ranks[n] = ha[n]
        return _coker_dims(ha, hb, ranks)

    def __str__(self):
        return f"P(O({self.b}))"


@dataclass(frozen=True)
class Dual(BundleExpr):
    e: BundleExpr

    def children(self):
        return (self.e,)

    def chern(self, n):
        return chern_dual(self.e.chern(n))

    def cohomology(self, n, l=0):
        # Serre duality
        h = self.e.cohomology(n, -l - n - 1)
        return tuple(reversed(h))

    def __str__(self):
        return f"dual({self.e})"


@dataclass(frozen=True)
class Twist(BundleExpr):
    e: BundleExpr
    t: int

    def children(self):
        return (self.e,)

    def chern(self, n):
        return chern_twist(self.e.chern(n), self.t)

    def cohomology(self, n, l=0):
        return self.e.cohomology(n, l + self.t)

    def __str__(self):
        return f"twist({self.e},{self.t})"


@dataclass(frozen=True)
class Multiple(BundleExpr):
    k: int
    e: BundleExpr

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("multiplicity must be >= 0")

    def children(self):
        return (self.e,)

    def chern(self, n):
        return _power(self.e.chern(n), self.k)

    def cohomology(self, n, l=0):
        return tuple(None if x is None else self.k * x for x in self.e.cohomology(n, l))

    def __str__(self):
        return f"{self.k}{self.e}"


@dataclass(frozen=True)
class Sum(BundleExpr):
    terms: tuple[BundleExpr, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def children(self):
        return self.terms

    def chern(self, n):
        c = trivial_class(n, 0)
        for t in self.terms:
            c = chern_mul(c, t.chern(n))
        return c

    def cohomology(self, n, l=0):
        h: Dims = (0,) * (n + 1)
        for t in self.terms:
            h = _add_dims(h, t.cohomology(n, l))
        return h

    def __str__(self):
        return "+".join(str(t) for t in self.terms) if self.terms else "0"


def _power(c: ChernVector, k: int) -> ChernVector:
    out = trivial_class(c.n, 0)
    for _ in range(k):
        out = chern_mul(out, c)
    return out


# -- parser --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(-?\d+|[A-Za-z]+|[()+,*])")


def parse_bundle(text: str) -> BundleExpr:
    """Parse ``O(a)``, ``Om(p,t)``, ``T(-1)``, ``P(O(b))``, ``dual(E)``,
    ``twist(E,t)``, multiples ``3O(1)`` or ``3*O(1)``, and sums with ``+``.
    """
    tokens = _TOKEN.findall(text)
    if "".join(tokens).replace(" ", "") != re.sub(r"\s+", "", text):
        raise ValueError(f"unexpected characters in {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected or 'a token'} at position {pos} in {text!r}")
        pos += 1
        return tok

    def integer():
        tok = take()
        if not re.fullmatch(r"-?\d+", tok):
            raise ValueError(f"expected an integer, got {tok!r}")
        return int(tok)

    def atom():
        tok = peek()
        if tok is not None and re.fullmatch(r"\d+", tok):
            k = integer()
            if peek() == "*":
                take("*")
            return Multiple(k, atom())
        name = take()
        take("(")
        if name == "O":
            e = Line(integer())
        elif name == "Om":
            p = integer()
            take(",")
            e = Omega(p, integer())
        elif name == "T":
            if integer() != -1:
                raise ValueError("only T(-1) is supported; use twist(T(-1),t)")
            e = TangentTwist()
        elif name == "P":
            inner = expr()
            if not isinstance(inner, Line):
                raise ValueError("P(...) is supported for line bundles O(b) only")
            e = PofLine(inner.a)
        elif name == "dual":
            e = Dual(expr())
        elif name == "twist":
            inner = expr()
            take(",")
            e = Twist(inner, integer())
        else:
            raise ValueError(f"unknown bundle constructor {name!r}")
        take(")")
        return e

    def expr():
        terms = [atom()]
        while peek() == "+":
            take("+")
            terms.append(atom())
        return terms[0] if len(terms) == 1 else Sum(_flatten(terms))

    out = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return out


# -- complexes -------------------------------------------------------------------

KINDS = ("resolution", "monad", "short_exact")


@dataclass(frozen=True)
class ComplexExpr:
    """A complex with terms in contiguous degrees, exact except in degree 0.

    The bundle of interest is the degree-0 cohomology, twisted by ``twist``:
    e.g. {-1: A, 0: B} with twist 1 describes E where 0 -> A -> B -> E(-1) -> 0.
    ``resolution`` allows degrees -k..0, ``monad`` exactly -1, 0, 1,
    ``short_exact`` either -1, 0 (cokernel) or 0, 1 (kernel).
    """

    terms: Mapping[int, BundleExpr]
    kind: str = "short_exact"
    twist: int = 0

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(sorted(self.terms.items())))
        degs = list(self.terms)
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if not degs or 0 not in degs or degs != list(range(degs[0], degs[-1] + 1)):
            raise ValueError(f"degrees {degs} must be contiguous and contain 0")
        if self.kind == "monad" and degs != [-1, 0, 1]:
            raise ValueError("a monad has exactly the degrees -1, 0, 1")
        if self.kind == "short_exact" and degs not in ([-1, 0], [0, 1], [0]):
            raise ValueError("a short exact display has degrees -1, 0 or 0, 1")
        if self.kind == "resolution" and degs[-1] != 0:
            raise ValueError("a left resolution has degrees <= 0")

    def validate(self, n: int) -> None:
        for t in self.terms.values():
            t.validate(n)

    def dual(self) -> ComplexExpr:
        """The dual complex; its degree-0 cohomology is the dual bundle."""
        kind = self.kind
        if kind == "resolution" and len(self.terms) > 2:
            raise ValueError("the dual of a long resolution is not a left resolution")
        terms = {-d: Dual(e) for d, e in self.terms.items()}
        if kind == "resolution" and len(self.terms) == 2:
            kind = "short_exact"
        return ComplexExpr(terms, kind, -self.twist)

    def __str__(self):
        body = " -> ".join(f"[{d}] {e}" for d, e in self.terms.items())
        return body + (f" ; twist {self.twist}" if self.twist else "")


Bundleish = Union[BundleExpr, ComplexExpr]


def complex_cohomology_bundle(cx: ComplexExpr, n: int) -> ChernVector:
    """Rank and Chern classes of the degree-0 cohomology (then twisted)."""
    cx.validate(n)
    rank = 0
    c = trivial_class(n, 0)
    for d, e in cx.terms.items():
        ce = e.chern(n)
        if d % 2 == 0:
            rank += ce.rank
            c = chern_mul(c, ce)
        else:
            rank -= ce.rank
            c = chern_mul(c, chern_inv(ce))
    if rank < 0:
        raise ValueError(f"display has negative rank {rank}: impossible")
    return chern_twist(ChernVector(n, rank, c.c), cx.twist)


def _map_rank(x, y):
    if x == 0 or y == 0:
        return 0
    return UNDETERMINED


def _sub(*xs):
    if any(x is None for x in xs):
        return None
    return xs[0] - sum(xs[1:])


def _coker_dims(ha: Dims, hb: Dims, ranks: Sequence) -> Dims:
    """h^q of coker(A -> B), A -> B injective, given ranks of H^q(A) -> H^q(B)."""
    n = len(ha) - 1
    out = []
    for q in range(n + 1):
        part = _sub(hb[q], ranks[q])
        nxt = _sub(ha[q + 1], ranks[q + 1]) if q < n else 0
        out.append(None if part is None or nxt is None else part + nxt)
    return tuple(out)


def _ker_dims(hb: Dims, hc: Dims, ranks: Sequence) -> Dims:
    """h^q of ker(B -> C), B -> C surjective, given ranks of H^q(B) -> H^q(C)."""
    n = len(hb) - 1
    out = []
    for q in range(n + 1):
        part = _sub(hb[q], ranks[q])
        prev = _sub(hc[q - 1], ranks[q - 1]) if q > 0 else 0
        out.append(None if part is None or prev is None else part + prev)
    return tuple(out)


def _coker(ha: Dims, hb: Dims) -> Dims:
    ranks = [_map_rank(x, y) for x, y in zip(ha, hb)]
    # H^0 is left exact: an injective sheaf map is injective on sections
    ranks[0] = ha[0]
    return _coker_dims(ha, hb, ranks)


def _ker(hb: Dims, hc: Dims) -> Dims:
    ranks = [_map_rank(x, y) for x, y in zip(hb, hc)]
    # H^n is right exact on P^n: a surjective sheaf map is surjective on H^n
    ranks[-1] = hc[-1]
    return _ker_dims(hb, hc, ranks)


def _complex_dims(cx: ComplexExpr, n: int, l: int) -> Dims:
    t = l + cx.twist
    h = {d: e.cohomology(n, t) for d, e in cx.terms.items()}
    cur = _ker(h[0], h[1]) if 1 in h else h[0]
    lowest = min(h)
    if lowest < 0:
        # split the left part into short exact sequences of images
        acc = h[lowest]
        for d in range(lowest + 1, 0):
            acc = _coker(acc, h[d])
        cur = _coker(acc, cur)
    return cur


def monad_cohomology_table(cx: ComplexExpr, n: int, lmin: int, lmax: int) -> CohomologyTable:
    """h^q(E(l)) for the cohomology bundle E of ``cx`` over the window.

    Ranks of the maps on cohomology are known when source or target vanishes,
    on H^0 of an injective map and on H^n of a surjective one; entries that
    depend on any other rank are UNDETERMINED.
    """
    cx.validate(n)
    return CohomologyTable.build(n, lmin, lmax, lambda l: _complex_dims(cx, n, l))


class ExprData(NamedTuple):
    rank: int
    chern: ChernVector
    table: CohomologyTable


def expr_data(e: Bundleish, n: int, lmin: int = -5, lmax: int = 5) -> ExprData:
    if isinstance(e, ComplexExpr):
        c = complex_cohomology_bundle(e, n)
        return ExprData(c.rank, c, monad_cohomology_table(e, n, lmin, lmax))
    e.validate(n)
    c = e.chern(n)
    return ExprData(c.rank, c, CohomologyTable.build(n, lmin, lmax, lambda l: e.cohomology(n, l)))


def bundle_class(e: Bundleish, n: int) -> ChernVector:
    return complex_cohomology_bundle(e, n) if isinstance(e, ComplexExpr) else e.chern(n)


def bundle_cohomology(e: Bundleish, n: int, l: int = 0) -> Dims:
    return _complex_dims(e, n, l) if isinstance(e, ComplexExpr) else e.cohomology(n, l)


# -- catalogue -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    n: int
    expr: Bundleish
    rank: int
    chern: ChernVector
    h0: int | None
    partner: str | None
    partner_chern: ChernVector | None
    schwarzenberger: bool = field(default=False)

    @property
    def c1234(self) -> tuple[int, int, int, int]:
        return tuple(self.chern[i] for i in range(1, 5))


def _thm_items(n: int) -> list[tuple[str, Bundleish, str | None]]:
    items = [("O(5)", Line(5), "P(O(5))"), ("P(O(5))", PofLine(5), "O(5)")]
    if n == 4:
        mid = Omega(2, 2) + Omega(1, 1)
        items += [
            ("thm-iii", ComplexExpr({-1: Omega(3, 3), 0: mid}, "short_exact", 1), "thm-iv"),
            ("thm-iv", ComplexExpr({0: mid, 1: Line(0)}, "short_exact", 1), "thm-iii"),
        ]
    if n == 5:
        items += [
            ("thm-v", ComplexExpr({-1: Omega(4, 4), 0: Omega(2, 2)}, "short_exact", 1), "thm-vi"),
            ("thm-vi", ComplexExpr({0: Omega(2, 2), 1: Line(0)}, "short_exact", 1), "thm-v"),
        ]
    if n == 6:
        items += [("thm-vii", Omega(1, 2), "thm-viii"), ("thm-viii", Omega(4, 5), "thm-vii")]
    return items


def _split_items(n: int) -> list[tuple[str, Bundleish, str | None]]:
    t = TangentTwist()
    items = [
        ("5O(1)", Multiple(5, Line(1)), None),
        ("4O(1)+T(-1)", Sum((Multiple(4, Line(1)), t)), None),
        ("3O(1)+2T(-1)", Sum((Multiple(3, Line(1)), Multiple(2, t))), None),
    ]
    if n == 4:
        # O(1) + E0 with E0(-1) the cohomology of Omega^3(3) -> Omega^2(2) + Omega^1(1) -> O;
        # the extra O in the middle, mapping to zero, contributes the O(1) summand
        e0 = ComplexExpr({-1: Omega(3, 3), 0: Sum((Omega(2, 2), Omega(1, 1), Line(0))), 1: Line(0)}, "monad", 1)
        items += [
            ("2O(1)+Om(1,2)", Sum((Multiple(2, Line(1)), Omega(1, 2))), None),
            ("O(1)+T(-1)+Om(1,2)", Sum((Line(1), t, Omega(1, 2))), None),
            ("2O(1)+Om(2,3)", Sum((Multiple(2, Line(1)), Omega(2, 3))), None),
            ("O(1)+E0", e0, None),
        ]
    if n == 5:
        items += [
            ("O(1)+Om(1,2)", Sum((Line(1), Omega(1, 2))), None),
            ("T(-1)+Om(1,2)", Sum((t, Omega(1, 2))), None),
        ]
    if n == 6:
        items += [("Om(1,2)", Omega(1, 2), None)]
    return items


def named_bundle_catalog(n: int) -> list[CatalogEntry]:
    """Bundles with c_1 = 5 on P^n (n = 4, 5, 6) with their numerical data.

    The P-functor partner is computed with h^0 read off the cohomology table.
    """
    if n not in (4, 5, 6):
        raise ValueError(f"catalogue is available for n = 4, 5, 6, not {n}")
    raw = _thm_items(n) + _split_items(n)
    classes = {name: bundle_class(e, n) for name, e, _ in raw}
    out = []
    for name, e, partner in raw:
        c = classes[name]
        h0 = _h0(e, n)
        pc = None
        if partner is not None:
            pc = p_functor(c, h0)
        out.append(CatalogEntry(name, n, e, c.rank, c, h0, partner, pc, schwarzenberger(c)))
    return out


def _h0(e: Bundleish, n: int) -> int | None:
    return bundle_cohomology(e, n, 0)[0]
