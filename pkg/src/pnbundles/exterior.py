"""Exterior algebra of V = k^{n+1} with exact rational coefficients.

Basis: e_I for strictly increasing index tuples I. Elements of the dual side
(covariant, e*_I) pair with V by <e*_I, e_J> = delta_IJ. Contraction is the
adjoint of wedge multiplication:

    <alpha -| omega, eta> = <alpha, omega ^ eta>

and every sign below is forced by that identity.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from sympy import QQ, Poly, Symbol, gcd as poly_gcd

from . import _linalg

__all__ = [
    "Multivector",
    "basis_vector",
    "parse_multivector",
    "wedge",
    "contract",
    "pairing",
    "skew_matrix",
    "skew_rank",
    "skew_normal_form",
    "skew_support",
    "ContractionMorphismSpec",
    "H0Matrix",
    "h0_matrix",
    "horrocks_spec",
    "sasakura_spec",
    "horrocks_epi_check",
    "sasakura_gg_check",
    "horrocks_ker_gg_check",
    "Witness",
    "Undecided",
    "decomposable_in_subspace",
    "annihilator",
    "wedge_annihilator",
    "gg_omega12_check",
    "two_form_pair_witness",
    "vector_and_threeforms_witness",
]


def _merge_sign(i: Sequence[int], j: Sequence[int]) -> int:
    """Sign of e_I ^ e_J = sign * e_{I u J}; 0 if I and J overlap."""
    if set(i) & set(j):
        return 0
    inversions = sum(1 for a in i for b in j if a > b)
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class Multivector:
    """An element of Lambda^grade V (or of Lambda^grade V^dual if covariant)."""

    dim_v: int
    grade: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()
    covariant: bool = False

    def __post_init__(self):
        if not 0 <= self.grade <= self.dim_v:
            raise ValueError(f"grade {self.grade} out of range for dim V = {self.dim_v}")
        clean: dict[tuple[int, ...], Fraction] = {}
        for idx, x in self.terms:
            idx = tuple(idx)
            if len(idx) != self.grade or list(idx) != sorted(set(idx)):
                raise ValueError(f"index tuple {idx} is not strictly increasing of length {self.grade}")
            if idx and not (0 <= idx[0] and idx[-1] < self.dim_v):
                raise ValueError(f"index tuple {idx} out of range")
            clean[idx] = clean.get(idx, Fraction(0)) + Fraction(x)
        object.__setattr__(
            self, "terms", tuple(sorted((k, v) for k, v in clean.items() if v != 0))
        )

    @classmethod
    def from_dict(cls, dim_v: int, grade: int, coeffs: Mapping, covariant: bool = False) -> Multivector:
        return cls(dim_v, grade, tuple(coeffs.items()), covariant)

    @classmethod
    def zero(cls, dim_v: int, grade: int, covariant: bool = False) -> Multivector:
        return cls(dim_v, grade, (), covariant)

    @classmethod
    def from_vector(cls, dim_v: int, grade: int, vec: Sequence, covariant: bool = False) -> Multivector:
        """Inverse of ``to_vector``: coordinates in the lexicographic basis."""
        keys = list(combinations(range(dim_v), grade))
        return cls(dim_v, grade, tuple(zip(keys, vec)), covariant)

    @property
    def coeffs(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self.terms)

    def to_vector(self) -> list[Fraction]:
        c = self.coeffs
        return [c.get(k, Fraction(0)) for k in combinations(range(self.dim_v), self.grade)]

    def is_zero(self) -> bool:
        return not self.terms

    def dual_tag(self, covariant: bool) -> Multivector:
        return Multivector(self.dim_v, self.grade, self.terms, covariant)

    def _check(self, other: Multivector) -> None:
        if self.dim_v != other.dim_v:
            raise ValueError(f"dim V mismatch: {self.dim_v} vs {other.dim_v}")

    def __add__(self, other: Multivector) -> Multivector:
        self._check(other)
        if self.grade != other.grade or self.covariant != other.covariant:
            raise ValueError("can only add multivectors of the same grade and variance")
        return Multivector(self.dim_v, self.grade, self.terms + other.terms, self.covariant)

    def __neg__(self) -> Multivector:
        return self.scale(-1)

    def __sub__(self, other: Multivector) -> Multivector:
        return self + (-other)

    def scale(self, s) -> Multivector:
        s = Fraction(s)
        return Multivector(self.dim_v, self.grade, tuple((k, s * v) for k, v in self.terms), self.covariant)

    def __rmul__(self, s) -> Multivector:
        return self.scale(s)

    def __xor__(self, other: Multivector) -> Multivector:
        return wedge(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        star = "*" if self.covariant else ""
        parts = []
        for idx, x in self.terms:
            mono = "^".join(f"e{i}{star}" for i in idx) or "1"
            if x == 1 and idx:
                parts.append(f"+{mono}")
            elif x == -1 and idx:
                parts.append(f"-{mono}")
            else:
                sign = "-" if x < 0 else "+"
                parts.append(f"{sign}{abs(x)}" + (f"*{mono}" if idx else ""))
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def basis_vector(dim_v: int, *idx: int, covariant: bool = False) -> Multivector:
    """e_{i1} ^ ... ^ e_{ik} (indices need not be sorted)."""
    order = sorted(idx)
    sign = 1
    for a, b in combinations(range(len(idx)), 2):
        if idx[a] > idx[b]:
            sign = -sign
    if len(set(idx)) < len(idx):
        return Multivector.zero(dim_v, len(idx), covariant)
    return Multivector(dim_v, len(idx), ((tuple(order), sign),), covariant)


_TERM = re.compile(r"([+-])((?:\d+(?:/\d+)?)?)\*?((?:e\d+\*?(?:\^e\d+\*?)*)?)")


def parse_multivector(text: str, dim_v: int, grade: int | None = None, covariant: bool = False) -> Multivector:
    """Parse e.g. ``"e0^e1 + e2^e3"``, ``"-1/2*e0^e4"``, ``"3e2"``.

    Whitespace is ignored. A bare ``0`` needs an explicit ``grade``.
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty multivector")
    if s[0] not in "+-":
        s = "+" + s
    pos = 0
    terms = []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse multivector near {s[pos:]!r}")
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coeff = -coeff
        idx = [int(t) for t in re.findall(r"e(\d+)", m.group(3))]
        terms.append((coeff, idx))
        pos = m.end()
    grades = {len(idx) for c, idx in terms if c != 0}
    if grade is None:
        if len(grades) != 1:
            raise ValueError("cannot infer a single grade (mixed or zero expression)")
        grade = grades.pop()
    elif grades - {grade}:
        raise ValueError(f"expression is not homogeneous of grade {grade}")
    out = Multivector.zero(dim_v, grade, covariant)
    for c, idx in terms:
        if c == 0:
            continue
        if any(i >= dim_v for i in idx):
            raise ValueError(f"basis index out of range for dim V = {dim_v}")
        out = out + basis_vector(dim_v, *idx, covariant=covariant).scale(c)
    return out


def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    if a.covariant != b.covariant:
        raise ValueError("cannot wedge a vector with a covector")
    g = a.grade + b.grade
    if g > a.dim_v:
        # Lambda^g V = 0; the zero of top grade stands in for it
        return Multivector.zero(a.dim_v, a.dim_v, a.covariant)
    out: dict[tuple[int, ...], Fraction] = {}
    for i, x in a.terms:
        for j, y in b.terms:
            s = _merge_sign(i, j)
            if s:
                k = tuple(sorted(i + j))
                out[k] = out.get(k, Fraction(0)) + s * x * y
    return Multivector.from_dict(a.dim_v, g, out, a.covariant)


def pairing(alpha: Multivector, eta: Multivector) -> Fraction:
    """<alpha, eta> for alpha covariant and eta in Lambda V of the same grade."""
    alpha._check(eta)
    if not alpha.covariant or eta.covariant:
        raise ValueError("pairing needs a covariant and a contravariant argument")
    if alpha.grade != eta.grade:
        return Fraction(0)
    c = eta.coeffs
    return sum((x * c.get(i, 0) for i, x in alpha.terms), Fraction(0))


def contract(alpha: Multivector, omega: Multivector) -> Multivector:
    """alpha -| omega in Lambda^{q} V^dual, for alpha of grade p+q and omega of grade p."""
    alpha._check(omega)
    if not alpha.covariant or omega.covariant:
        raise ValueError("contract needs a covariant alpha and a contravariant omega")
    q = alpha.grade - omega.grade
    if q < 0:
        raise ValueError(f"grade underflow: {alpha.grade} - {omega.grade}")
    a = alpha.coeffs
    out: dict[tuple[int, ...], Fraction] = {}
    for i, w in omega.terms:
        rest = [t for t in range(alpha.dim_v) if t not in i]
        for j in combinations(rest, q):
            x = a.get(tuple(sorted(i + j)))
            if x:
                out[j] = out.get(j, Fraction(0)) + _merge_sign(i, j) * w * x
    return Multivector.from_dict(alpha.dim_v, q, out, covariant=True)


# -- skew forms ---------------------------------------------------------------


def _check_grade(omega: Multivector, grade: int) -> None:
    if omega.grade != grade:
        raise ValueError(f"expected grade {grade}, got {omega.grade}")


def skew_matrix(omega: Multivector) -> list[list[Fraction]]:
    _check_grade(omega, 2)
    d = omega.dim_v
    a = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), x in omega.terms:
        a[i][j] = x
        a[j][i] = -x
    return a


def skew_rank(omega: Multivector) -> int:
    return _linalg.rank(skew_matrix(omega), omega.dim_v)


def skew_support(omega: Multivector) -> list[list[Fraction]]:
    """Basis of the smallest subspace U of V with omega in Lambda^2 U."""
    a = skew_matrix(omega)
    cols = []
    for col in zip(*a):
        if any(col) and not _linalg.in_span(cols, col):
            cols.append(list(col))
    return cols


def skew_normal_form(omega: Multivector) -> list[Multivector]:
    """A basis v_0..v_n of V with omega = v_0^v_1 + ... + v_{2m-2}^v_{2m-1}.

    Symplectic Gram-Schmidt for the form B(x, y) = <omega, x ^ y> on V^dual,
    followed by passing to the dual basis.
    """
    a = skew_matrix(omega)
    d = omega.dim_v

    def form(x, y):
        return sum(x[i] * a[i][j] * y[j] for i in range(d) for j in range(d) if a[i][j])

    pool = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    xi: list[list[Fraction]] = []
    while True:
        pair = next(
            ((s, t) for s in range(len(pool)) for t in range(len(pool)) if form(pool[s], pool[t]) != 0),
            None,
        )
        if pair is None:
            break
        s, t = pair
        x = pool[s]
        b = form(x, pool[t])
        y = [c / b for c in pool[t]]
        rest = [z for k, z in enumerate(pool) if k not in (s, t)]
        pool = []
        for z in rest:
            zy, zx = form(z, y), form(z, x)
            pool.append([z[i] - zy * x[i] + zx * y[i] for i in range(d)])
        xi += [x, y]
    # radical: complete with a basis of the span of what is left
    for z in pool:
        if not _linalg.in_span(xi, z):
            xi.append(z)
    inv = _linalg.inverse(xi)
    return [
        Multivector.from_vector(d, 1, [inv[i][k] for i in range(d)]) for k in range(d)
    ]


# -- contraction morphisms --------------------------------------------------


@dataclass(frozen=True)
class ContractionMorphismSpec:
    """A map sum Omega^{p_i}(p_i) -> sum Omega^{q_j}(q_j) given by contractions.

    ``entries[(i, j)]`` is the element of Lambda^{p_i - q_j} V defining the
    component from source term i to target term j; absent keys are zero maps.
    """

    dim_v: int
    source: tuple[tuple[int, int], ...]
    target: tuple[tuple[int, int], ...]
    entries: Mapping[tuple[int, int], Multivector] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "source", tuple(tuple(t) for t in self.source))
        object.__setattr__(self, "target", tuple(tuple(t) for t in self.target))
        for p, t in self.source + self.target:
            if p != t:
                raise ValueError(f"only Omega^p(p) terms are supported, got Omega^{p}({t})")
            if not 0 <= p < self.dim_v:
                raise ValueError(f"Omega^{p} out of range on P^{self.dim_v - 1}")
        for (i, j), w in self.entries.items():
            if not (0 <= i < len(self.source) and 0 <= j < len(self.target)):
                raise ValueError(f"entry {(i, j)} out of range")
            if w.dim_v != self.dim_v or w.covariant:
                raise ValueError(f"entry {(i, j)} must be a vector in Lambda V, dim V = {self.dim_v}")
            if w.grade != self.source[i][0] - self.target[j][0]:
                raise ValueError(
                    f"entry {(i, j)} has grade {w.grade}, expected {self.source[i][0] - self.target[j][0]}"
                )


@dataclass(frozen=True)
class H0Matrix:
    """Matrix of H^0(phi(1)); rows index the target basis, columns the source basis."""

    matrix: tuple[tuple[Fraction, ...], ...]
    rank: int
    rows: tuple[tuple[int, tuple[int, ...]], ...]
    cols: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)


def h0_matrix(spec: ContractionMorphismSpec) -> H0Matrix:
    """H^0(phi(1)) : sum Lambda^{p_i+1} V^dual -> sum Lambda^{q_j+1} V^dual.

    The component (i, j) is (-1)^{p_i - q_j} (* -| omega_ij).
    """
    d = spec.dim_v
    cols = [(i, k) for i, (p, _) in enumerate(spec.source) for k in combinations(range(d), p + 1)]
    rows = [(j, k) for j, (q, _) in enumerate(spec.target) for k in combinations(range(d), q + 1)]
    row_index = {r: n for n, r in enumerate(rows)}
    m = [[Fraction(0)] * len(cols) for _ in rows]
    for c, (i, k) in enumerate(cols):
        alpha = Multivector(d, len(k), ((k, 1),), covariant=True)
        for (si, j), w in spec.entries.items():
            if si != i:
                continue
            sign = (-1) ** w.grade
            for idx, x in contract(alpha, w).terms:
                m[row_index[(j, idx)]][c] += sign * x
    return H0Matrix(tuple(map(tuple, m)), _linalg.rank(m, len(cols)), tuple(rows), tuple(cols))


def horrocks_spec(omega: Multivector) -> ContractionMorphismSpec:
    """Omega^3(3) -> Omega^1(1) given by omega in Lambda^2 V."""
    _check_grade(omega, 2)
    return ContractionMorphismSpec(omega.dim_v, ((3, 3),), ((1, 1),), {(0, 0): omega})


def sasakura_spec(omega: Multivector, v: Multivector) -> ContractionMorphismSpec:
    """Omega^3(3) + Omega^2(2) -> Omega^1(1) given by omega and v."""
    _check_grade(omega, 2)
    _check_grade(v, 1)
    return ContractionMorphismSpec(omega.dim_v, ((3, 3), (2, 2)), ((1, 1),), {(0, 0): omega, (1, 0): v})


def _check_dim(omega: Multivector, dim_v: int) -> None:
    if omega.dim_v != dim_v:
        raise ValueError(f"expected dim V = {dim_v}, got {omega.dim_v}")


def horrocks_epi_check(omega: Multivector, dim_v: int = 6) -> bool:
    """Is Omega^3(3) -> Omega^1(1) on P^5, defined by omega, an epimorphism?"""
    if dim_v != 6:
        raise ValueError("the criterion is stated for dim V = 6")
    _check_dim(omega, dim_v)
    return skew_rank(omega) == 6


def sasakura_gg_check(omega: Multivector, v: Multivector, dim_v: int = 5) -> bool:
    """Is Omega^3(3) + Omega^2(2) -> Omega^1(1) on P^4 an epimorphism?

    True iff omega = v0^v1 + v2^v3 in some basis and v is a multiple of v4
    modulo the span of v0..v3, i.e. rank omega = 4 and v is not in the support.
    """
    if dim_v != 5:
        raise ValueError("the criterion is stated for dim V = 5")
    _check_dim(omega, dim_v)
    _check_dim(v, dim_v)
    _check_grade(v, 1)
    if v.is_zero():
        raise ValueError("v must be nonzero")
    if skew_rank(omega) != 4:
        return False
    return not _linalg.in_span(skew_support(omega), v.to_vector())


def horrocks_ker_gg_check(omega: Multivector, dim_v: int = 6) -> bool:
    """For an epimorphism Omega^2(2) -> O given by omega, is the kernel (twisted by 1) globally generated?"""
    if dim_v != 6:
        raise ValueError("the criterion is stated for dim V = 6")
    _check_dim(omega, dim_v)
    r = skew_rank(omega)
    if r < 4:
        raise ValueError(f"omega has rank {r} < 4: Omega^2(2) -> O is not an epimorphism")
    return r == 6


# -- decomposable 2-vectors ---------------------------------------------------


class Undecided(Exception):
    """The heuristic search found no witness; no conclusion is drawn."""


@dataclass(frozen=True)
class Witness:
    """The decomposable element a + theta * b, theta a root of ``minpoly``.

    ``minpoly`` lists the coefficients of a monic irreducible polynomial over Q,
    lowest degree first; degree 1 means the witness is rational.
    """

    a: Multivector
    b: Multivector
    minpoly: tuple[Fraction, ...]

    @property
    def is_rational(self) -> bool:
        return len(self.minpoly) == 2

    def value(self) -> Multivector:
        if not self.is_rational:
            raise ValueError("witness is defined over a quadratic extension")
        return self.a + self.b.scale(-self.minpoly[0])

    def verify(self) -> bool:
        """Check (a + theta b)^2 = 0 in Lambda^4 V tensor Q[theta]/(minpoly)."""
        if self._is_zero_element():
            return False
        comps = _square_components(self.a, self.b)
        s = Symbol("s")
        m = Poly(list(reversed(self.minpoly)), s, domain=QQ)
        for c0, c1, c2 in comps:
            if not Poly([c2, c1, c0], s, domain=QQ).rem(m).is_zero:
                return False
        return True

    def _is_zero_element(self) -> bool:
        if self.is_rational:
            return self.value().is_zero()
        # irrational theta: a + theta b = 0 forces a = b = 0
        return self.a.is_zero() and self.b.is_zero()


def _square_components(a: Multivector, b: Multivector) -> list[tuple[Fraction, Fraction, Fraction]]:
    """Coefficients of (a + s b)^2 = a^a + 2 s a^b + s^2 b^b, per Lambda^4 component."""
    aa, ab, bb = wedge(a, a).coeffs, wedge(a, b).coeffs, wedge(b, b).coeffs
    keys = set(aa) | set(ab) | set(bb)
    return [(aa.get(k, Fraction(0)), 2 * ab.get(k, Fraction(0)), bb.get(k, Fraction(0))) for k in sorted(keys)]


def _rational(a: Multivector) -> Witness:
    return Witness(a, Multivector.zero(a.dim_v, a.grade), (Fraction(0), Fraction(1)))


def _pencil(a: Multivector, b: Multivector) -> Witness | None:
    """Exact decision for the span of a, b (each nonzero, independent or not)."""
    if wedge(b, b).is_zero() and not b.is_zero():
        return _rational(b)
    comps = _square_components(a, b)
    if not comps:
        return _rational(a) if not a.is_zero() else None
    s = Symbol("s")
    g = None
    for c0, c1, c2 in comps:
        p = Poly([c2, c1, c0], s, domain=QQ)
        g = p if g is None else poly_gcd(g, p)
    if g.is_zero:
        return _rational(a)
    if g.degree() <= 0:
        return None
    g = g.monic()
    for factor, _ in g.factor_list()[1]:
        if factor.degree() == 1:
            f = factor.monic()
            root = -Fraction(str(f.all_coeffs()[1]))
            w = a + b.scale(root)
            if not w.is_zero():
                return _rational(w)
    coeffs = tuple(Fraction(str(c)) for c in reversed(g.all_coeffs()))
    if len(coeffs) == 3:
        return Witness(a, b, coeffs)
    return None


def decomposable_in_subspace(basis: Sequence[Multivector], seed: int = 0, tries: int = 200) -> Witness | None:
    """Find a nonzero decomposable element (omega ^ omega = 0) in span(basis).

    Exact for spans of dimension <= 2 (returns ``None`` when there is none).
    For larger spans a witness is searched heuristically; if none is found,
    ``Undecided`` is raised rather than answering "no".
    """
    basis = [b for b in basis]
    for b in basis:
        _check_grade(b, 2)
    vecs = [b.to_vector() for b in basis]
    indep: list[Multivector] = []
    for b, v in zip(basis, vecs):
        if not _linalg.in_span([x.to_vector() for x in indep], v):
            indep.append(b)
    if not indep:
        raise ValueError("zero-dimensional span")
    if len(indep) == 1:
        return _rational(indep[0]) if wedge(indep[0], indep[0]).is_zero() else None
    if len(indep) == 2:
        return _pencil(indep[0], indep[1])
    for b in indep:
        if wedge(b, b).is_zero():
            return _rational(b)
    for a, b in combinations(indep, 2):
        w = _pencil(a, b)
        if w is not None:
            return w
    rng = random.Random(seed)
    for _ in range(tries):
        a = _combo(indep, [rng.randint(-3, 3) for _ in indep])
        b = _combo(indep, [rng.randint(-3, 3) for _ in indep])
        if a.is_zero() or b.is_zero():
            continue
        w = _pencil(a, b)
        if w is not None:
            return w
    for cs in product(range(-2, 3), repeat=len(indep)):
        if any(cs):
            w = _combo(indep, cs)
            if wedge(w, w).is_zero():
                return _rational(w)
    raise Undecided(f"no decomposable element found in a {len(indep)}-dimensional span")


def _combo(vs: Sequence[Multivector], cs: Iterable) -> Multivector:
    out = Multivector.zero(vs[0].dim_v, vs[0].grade, vs[0].covariant)
    for v, c in zip(vs, cs):
        if c:
            out = out + v.scale(c)
    return out


def annihilator(w: Sequence[Multivector], dim_v: int, grade: int) -> list[Multivector]:
    """W^perp in Lambda^grade V for covariant W, under the pairing <e*_I, e_J> = delta."""
    for a in w:
        if not a.covariant or a.grade != grade or a.dim_v != dim_v:
            raise ValueError("W must consist of covariant elements of the given grade")
    ncols = len(list(combinations(range(dim_v), grade)))
    return [Multivector.from_vector(dim_v, grade, v) for v in _linalg.nullspace([a.to_vector() for a in w], ncols)]


def wedge_annihilator(w: Sequence[Multivector], grade: int) -> list[Multivector]:
    """{eta in Lambda^grade V : x ^ eta = 0 for all x in W}, for W inside Lambda V."""
    if not w:
        raise ValueError("empty W")
    dim_v = w[0].dim_v
    keys = list(combinations(range(dim_v), grade))
    rows = []
    for x in w:
        images = [wedge(x, Multivector(dim_v, grade, ((k, 1),))) for k in keys]
        targets = sorted({t for im in images for t, _ in im.terms})
        for t in targets:
            rows.append([im.coeffs.get(t, Fraction(0)) for im in images])
    return [Multivector.from_vector(dim_v, grade, v) for v in _linalg.nullspace(rows, len(keys))]


def gg_omega12_check(w: Sequence[Multivector], dim_v: int | None = None) -> bool | None:
    """Does W (inside Lambda^2 V^dual) globally generate Omega^1(2)?

    True iff W^perp has no nonzero decomposable element. Returns ``None`` when
    W^perp has dimension >= 3 and the heuristic search finds no witness.
    """
    if dim_v is None:
        if not w:
            raise ValueError("dim_v is required for empty W")
        dim_v = w[0].dim_v
    perp = annihilator(w, dim_v, 2)
    if not perp:
        return True
    try:
        return decomposable_in_subspace(perp) is None
    except Undecided:
        return None


def _vectors(vs: Sequence[Sequence], dim_v: int) -> list[Multivector]:
    return [Multivector.from_vector(dim_v, 1, v) for v in vs]


def _intersect(u: Sequence[Sequence], u2: Sequence[Sequence], dim_v: int) -> list[list[Fraction]]:
    """Basis of span(u) cap span(u2)."""
    rows = [[u[k][i] for k in range(len(u))] + [-u2[k][i] for k in range(len(u2))] for i in range(dim_v)]
    out = []
    for sol in _linalg.nullspace(rows, len(u) + len(u2)):
        v = [sum(sol[k] * u[k][i] for k in range(len(u))) for i in range(dim_v)]
        if any(v) and not _linalg.in_span(out, v):
            out.append(v)
    return out


def two_form_pair_witness(omega: Multivector, omega2: Multivector) -> Witness:
    """A decomposable eta with eta ^ omega ^ V = eta ^ omega2 ^ V = 0.

    Shows that Omega^3(3) -> 2 Omega^1(1) given by (omega, omega2) on P^4 is not
    a locally split monomorphism. The constructive route takes eta in
    Lambda^2(U cap U2), U, U2 the supports, which works whenever that
    intersection has dimension 2 or 3; otherwise the general search is used.
    """
    _check_grade(omega, 2)
    _check_grade(omega2, 2)
    d = omega.dim_v
    w = [wedge(f, basis_vector(d, i)) for f in (omega, omega2) for i in range(d)]
    w = [x for x in w if not x.is_zero()]
    perp = wedge_annihilator(w, 2) if w else [Multivector(d, 2, ((k, 1),)) for k in combinations(range(d), 2)]
    if not perp:
        raise Undecided("W^perp is zero")
    x = _intersect(skew_support(omega), skew_support(omega2), d) if not (omega.is_zero() or omega2.is_zero()) else []
    if 2 <= len(x) <= 3:
        small = [wedge(a, b) for a, b in combinations(_vectors(x, d), 2)]
        rows_perp = [p.to_vector() for p in perp]
        # eta in Lambda^2 X cap W^perp: solve sum t_k small_k in span(perp)
        for cs in _small_in_span(small, rows_perp):
            return _rational(cs)
    return decomposable_in_subspace(perp)


def _small_in_span(small: Sequence[Multivector], span_rows: Sequence[Sequence]) -> Iterable[Multivector]:
    """Nonzero elements of span(small) that lie in span(span_rows)."""
    n_small = len(small)
    cols = [s.to_vector() for s in small] + [[-x for x in r] for r in span_rows]
    dim = len(cols[0])
    rows = [[c[i] for c in cols] for i in range(dim)]
    for sol in _linalg.nullspace(rows, len(cols)):
        eta = _combo(small, sol[:n_small])
        if not eta.is_zero():
            yield eta


def vector_and_threeforms_witness(v0: Multivector, omegas: Sequence[Multivector]) -> Witness:
    """A decomposable v1 ^ v0 with v1 ^ v0 ^ omega_i = 0 for all i.

    On P^4 this shows Omega^3(3) -> 3 O + Omega^2(2), given by three 3-vectors
    and v0, is not a locally split monomorphism: W = v0 ^ Lambda^2 V + sum k omega_i
    has v1 ^ v0 in its wedge annihilator.
    """
    _check_grade(v0, 1)
    if v0.is_zero():
        raise ValueError("v0 must be nonzero")
    d = v0.dim_v
    for w in omegas:
        _check_grade(w, 3)
    rows = []
    basis = [basis_vector(d, i) for i in range(d)]
    for w in omegas:
        images = [wedge(wedge(e, v0), w) for e in basis]
        for t in sorted({t for im in images for t, _ in im.terms}):
            rows.append([im.coeffs.get(t, Fraction(0)) for im in images])
    sols = _linalg.nullspace(rows, d) if rows else [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    for sol in sols:
        eta = wedge(Multivector.from_vector(d, 1, sol), v0)
        if not eta.is_zero():
            return _rational(eta)
    raise Undecided("no v1 outside k v0 found")
