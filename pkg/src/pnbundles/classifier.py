"""Classification driver for globally generated bundles with c_1 = 5.

Candidate Chern data (c_2, c_3, c_4) on P^4 are enumerated and passed through
named filters. Each filter is either ``arithmetic`` (re-checkable from the
numbers alone) or ``cited`` (a nonexistence or uniqueness result taken as
given). Every surviving record carries the trace of the filters it passed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, NamedTuple, Sequence

from .chowring import (
    ChernVector,
    chern_mul,
    chern_twist,
    line_class,
    p_functor,
    rank_formula,
    rr_h2_minus_h1,
    schwarzenberger,
)
from .cohomtab import Spectrum, enumerate_spectra, h1_formulas
from .monadlab import (
    ComplexExpr,
    Dual,
    Line,
    Multiple,
    TangentTwist,
    bundle_class,
    bundle_cohomology,
    named_bundle_catalog,
)

__all__ = [
    "Rule",
    "PAIR_RULES",
    "CandidateRecord",
    "filter_chern",
    "c2_12_c3_rule",
    "c2_12_companion_facts",
    "LiaisonData",
    "liaison_chi",
    "c3_bookkeeping",
    "g_c3_bookkeeping",
    "UnstableCase",
    "fprimunstable_table",
    "CITED_SPECTRUM_EXCLUSIONS",
    "admissible_spectra",
    "ItemCheck",
    "ThmReport",
    "verify_thm_main",
    "records_to_json",
    "format_records_table",
]

C1 = 5
ASSUMPTIONS = ("H^0(E^dual) = 0", "H^1(E^dual) = 0")


class Rule(NamedTuple):
    name: str
    kind: str  # "arithmetic" or "cited"
    keep: Callable[[int, int], bool]
    citation: str = ""


PAIR_RULES: tuple[Rule, ...] = (
    Rule("parity", "arithmetic", lambda c2, c3: (c3 - C1 * c2) % 2 == 0),
    Rule(
        "h1(F(-2))>=0",
        "arithmetic",
        lambda c2, c3: h1_formulas(c2, c3, 0).h1_fm2 >= 0,
    ),
    Rule(
        "c2>=9&(c2=9=>c3=5)",
        "cited",
        lambda c2, c3: c2 >= 9 and (c2 != 9 or c3 == 5),
        "lower bound for c_2 when H^i(E^dual) = 0",
    ),
    Rule(
        "c2>=10&c3>=c2",
        "cited",
        lambda c2, c3: c2 >= 10 and c3 >= c2,
        "lower bounds for c_2 and c_3",
    ),
    Rule(
        "c3=c2=>c2=10",
        "cited",
        lambda c2, c3: c3 != c2 or c2 == 10,
        "c_3 = c_2 only for 5 O(1)",
    ),
    Rule(
        "no(12,14)",
        "cited",
        lambda c2, c3: (c2, c3) != (12, 14),
        "no globally generated bundle with c_2 = 12, c_3 = 14",
    ),
)

_RULES_BY_NAME = {r.name: r for r in PAIR_RULES}


@dataclass(frozen=True)
class CandidateRecord:
    """One admissible Chern triple together with how it was obtained."""

    n: int
    rank: int | None
    chern: ChernVector
    construction: str | None
    rule_trace: tuple[str, ...]
    constructions: tuple[str, ...] = ()
    partner: ChernVector | None = None
    assumptions: tuple[str, ...] = ASSUMPTIONS

    def __post_init__(self):
        if not self.rule_trace:
            raise ValueError("rule trace must not be empty")
        if not schwarzenberger(self.chern):
            raise ValueError(f"{self.triple} violates the Schwarzenberger congruence")

    @property
    def triple(self) -> tuple[int, int, int]:
        return self.chern[2], self.chern[3], self.chern[4]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "rank": self.rank,
            "chern": list(self.chern.c),
            "construction": self.construction,
            "constructions": list(self.constructions),
            "rule_trace": list(self.rule_trace),
            "partner": None if self.partner is None else {"rank": self.partner.rank, "chern": list(self.partner.c)},
            "assumptions": list(self.assumptions),
        }


def _catalog_by_triple(n: int) -> dict[tuple[int, int, int], list]:
    out: dict[tuple[int, int, int], list] = {}
    for entry in named_bundle_catalog(n):
        if entry.chern[1] != C1:
            continue
        out.setdefault((entry.chern[2], entry.chern[3], entry.chern[4]), []).append(entry)
    return out


def _c4_candidates(c2: int, c3: int) -> list[int]:
    """c_4 with h^2(E(-3)) - h^1(E(-3)) a non-negative integer and the congruence.

    h^1(E(-3)) vanishes for these bundles, so the Riemann-Roch difference is
    h^2(E(-3)) >= 0; it decreases in c_4, which bounds the search.
    """
    out = []
    c4 = 0
    while rr_h2_minus_h1(c2, c3, c4).value >= 0:
        rr = rr_h2_minus_h1(c2, c3, c4)
        if rr.integral and schwarzenberger((C1, c2, c3, c4)):
            out.append(c4)
        c4 += 1
    return out


def filter_chern(
    n: int = 4, c2_range: Iterable[int] = range(0, 13), disabled: Sequence[str] = ()
) -> list[CandidateRecord]:
    """Admissible (c_2, c_3, c_4) for c_1 = 5 on P^4, with rule traces.

    Pairs (c_2, c_3) with 0 <= c_3 <= 5 c_2 go through ``PAIR_RULES`` in order
    (rules named in ``disabled`` are skipped). For each surviving pair, c_4
    ranges over the values allowed by Riemann-Roch and the congruence; when the
    catalogue realizes the pair, c_4 is the one of the known bundle (a cited
    uniqueness result), otherwise every arithmetic candidate is kept with no
    construction attached. Output is sorted by (c_2, c_3, c_4).
    """
    if n != 4:
        raise ValueError(f"Chern triples are classified on P^4 only, not P^{n}")
    unknown = set(disabled) - set(_RULES_BY_NAME)
    if unknown:
        raise ValueError(f"unknown rule(s): {sorted(unknown)}")
    c2_values = sorted(set(int(c) for c in c2_range))
    if c2_values and (c2_values[0] < 0 or c2_values[-1] > 12):
        raise ValueError("c2 must lie in 0..12 (larger c2 is reduced by the P-functor)")
    rules = [r for r in PAIR_RULES if r.name not in disabled]
    catalog = _catalog_by_triple(n)
    out = []
    for c2 in c2_values:
        for c3 in range(0, C1 * c2 + 1):
            if not all(r.keep(c2, c3) for r in rules):
                continue
            trace = tuple(f"{r.kind}:{r.name}" for r in rules)
            c4s = _c4_candidates(c2, c3)
            realized = [c4 for c4 in c4s if (c2, c3, c4) in catalog]
            if realized:
                trace_c4 = trace + ("arithmetic:riemann-roch-c4", "cited:c4-by-construction")
                c4s = realized
            else:
                trace_c4 = trace + ("arithmetic:riemann-roch-c4",)
            for c4 in c4s:
                out.append(_record(n, c2, c3, c4, catalog.get((c2, c3, c4), []), trace_c4))
    return out


def _record(n, c2, c3, c4, entries, trace) -> CandidateRecord:
    c = ChernVector(n, 0, (C1, c2, c3, c4))
    if entries:
        first = entries[0]
        c = first.chern
        partner = p_functor(c, first.h0) if first.h0 is not None else None
        return CandidateRecord(n, c.rank, c, first.name, trace, tuple(e.name for e in entries), partner)
    r = rank_formula(c2, c3, c4)
    rank = int(r.value) if r.integral and r.value > 0 else None
    if rank is not None:
        c = ChernVector(n, rank, c.c)
    return CandidateRecord(n, rank, c, None, trace)


# -- c_2 = 12 -----------------------------------------------------------------


def c2_12_c3_rule(h0_fm1: int) -> frozenset[int] | None:
    """Allowed c_3 when c_2 = 12, given h^0(F(-1)); None means no restriction."""
    if h0_fm1 < 0:
        raise ValueError("h0 must be non-negative")
    return frozenset({16, 18, 20}) if h0_fm1 >= 2 else None


def c2_12_companion_facts(c3: int) -> dict[str, int]:
    """Further cohomology forced for c_2 = 12, h^0(F(-1)) >= 2."""
    if c3 not in (16, 18, 20):
        raise ValueError(f"c3 = {c3} is not allowed when h0(F(-1)) >= 2")
    return {"h1_fm3": 1, "h0_fm1": 2} if c3 == 16 else {}


# -- liaison bookkeeping -------------------------------------------------------


@dataclass(frozen=True)
class LiaisonData:
    """Curves Y, Y' linked by a complete intersection of type (a, b)."""

    ci_type: tuple[int, int]
    deg_y: int
    deg_y2: int
    chi_y: int | None = None
    chi_y2: int | None = None

    def __post_init__(self):
        a, b = self.ci_type
        if self.deg_y + self.deg_y2 != a * b:
            raise ValueError(f"degrees {self.deg_y} + {self.deg_y2} != {a} * {b}")
        if self.chi_y is not None and self.chi_y2 is not None:
            if self.chi_y2 - self.chi_y != self.chi_difference():
                raise ValueError("chi values are incompatible with the linkage")

    def chi_difference(self) -> int:
        """chi(O_Y') - chi(O_Y)."""
        return liaison_chi(*self.ci_type, self.deg_y, self.deg_y2)

    def complete(self) -> LiaisonData:
        """Fill in the missing chi from the other one."""
        d = self.chi_difference()
        if self.chi_y is not None and self.chi_y2 is None:
            return LiaisonData(self.ci_type, self.deg_y, self.deg_y2, self.chi_y, self.chi_y + d)
        if self.chi_y2 is not None and self.chi_y is None:
            return LiaisonData(self.ci_type, self.deg_y, self.deg_y2, self.chi_y2 - d, self.chi_y2)
        return self


def liaison_chi(a: int, b: int, deg_y: int, deg_y2: int) -> int:
    """chi(O_Y') - chi(O_Y) = (a + b - 4)(deg Y - deg Y') / 2 for linked curves."""
    if deg_y + deg_y2 != a * b:
        raise ValueError(f"degrees {deg_y} + {deg_y2} do not add up to {a} * {b}")
    # deg Y - deg Y' = ab - 2 deg Y' has the parity of ab, so the product is even
    return (a + b - 4) * (deg_y - deg_y2) // 2


def c3_bookkeeping(chi_y: int | None = None, chi_y2: int | None = None) -> int:
    """c_3 = -12 - 2 chi(O_Y); from chi(O_Y') through c_3 = c_3(G) + 16."""
    if chi_y is None and chi_y2 is None:
        raise ValueError("need chi(O_Y) or chi(O_Y')")
    values = set()
    if chi_y is not None:
        values.add(-12 - 2 * chi_y)
    if chi_y2 is not None:
        values.add(g_c3_bookkeeping(chi_y2) + 16)
    if len(values) > 1:
        raise ValueError(f"inconsistent pair: chi(O_Y) = {chi_y}, chi(O_Y') = {chi_y2}")
    return values.pop()


def g_c3_bookkeeping(chi_y2: int) -> int:
    """c_3(G) = 4 - 2 chi(O_Y')."""
    return 4 - 2 * chi_y2


# -- unstable G on P^3 ---------------------------------------------------------


def _instanton_twist(m: int) -> ChernVector:
    """Class of M(2) for a rank 2 M on P^3 with c_1 = 0, c_2 = m."""
    return chern_twist(ChernVector(3, 2, (0, m, 0), honest=True), 2)


@dataclass(frozen=True)
class UnstableCase:
    label: str
    rank: int
    c2_values: tuple[int, ...]
    description: str
    c3_shift: int  # c_3 = c_2 + c3_shift
    sub_shift: int | None  # c_2(M) = c_2 + sub_shift

    def c3(self, c2: int) -> int:
        self._check(c2)
        return c2 + self.c3_shift

    def sub_c2(self, c2: int) -> int | None:
        self._check(c2)
        return None if self.sub_shift is None else c2 + self.sub_shift

    def chern(self, c2: int) -> ChernVector:
        """Class of F computed from the displayed extension or splitting."""
        self._check(c2)
        if self.label == "i":
            return chern_mul(_instanton_twist(self.sub_c2(c2)), line_class(3, 1))
        if self.label == "ii":
            kernel = ComplexExpr({0: Multiple(4, Line(2)), 1: Line(4)}, "short_exact")
            return chern_mul(line_class(3, 1), bundle_class(kernel, 3))
        return chern_mul(_instanton_twist(self.sub_c2(c2)), TangentTwist().chern(3))

    def _check(self, c2: int) -> None:
        if c2 not in self.c2_values:
            raise ValueError(f"case ({self.label}) needs c2 in {self.c2_values}, got {c2}")


def fprimunstable_table() -> list[UnstableCase]:
    """The three shapes of F on P^3 (c_1 = 5, c_2 <= 12) whose quotient G is unstable."""
    return [
        UnstableCase(
            "i", 3, (9, 10, 11, 12),
            "0 -> M(2) -> F -> O(1) -> 0, M an instanton of charge c2 - 8",
            -4, -8,
        ),
        UnstableCase(
            "ii", 4, (12,),
            "F = O(1) + Ker(4 O(2) -> O(4))",
            -4, None,
        ),
        UnstableCase(
            "iii", 5, (10, 11, 12),
            "0 -> M(2) -> F -> T(-1) -> 0, M rank 2 with c1 = 0, c2 = c2 - 9",
            0, -9,
        ),
    ]


# -- spectra --------------------------------------------------------------------

CITED_SPECTRUM_EXCLUSIONS = {(1, 1, 0, -1): "spectrum (1,1,0,-1) does not occur"}


def admissible_spectra(c2g: int, c3g: int, nonpositive: bool = False) -> list[tuple[Spectrum, tuple[str, ...]]]:
    """Spectra of G with their traces, applying the cited exclusions as well."""
    out = []
    for s in enumerate_spectra(c2g, c3g, nonpositive):
        if s.k in CITED_SPECTRUM_EXCLUSIONS:
            continue
        out.append((s, ("arithmetic:spectrum-rules", "arithmetic:excluded-spectra", "cited:(1,1,0,-1)")))
    return out


# -- regression of the main items ------------------------------------------------

_THM_ITEMS = (
    ("i", "O(5)"),
    ("ii", "P(O(5))"),
    ("iii", "thm-iii"),
    ("iv", "thm-iv"),
    ("v", "thm-v"),
    ("vi", "thm-vi"),
    ("vii", "thm-vii"),
    ("viii", "thm-viii"),
)
_ITEM_N = {"iii": (4,), "iv": (4,), "v": (5,), "vi": (5,), "vii": (6,), "viii": (6,)}


@dataclass(frozen=True)
class ItemCheck:
    item: str
    n: int
    name: str
    rank: int
    chern: tuple[int, ...]
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


@dataclass(frozen=True)
class ThmReport:
    items: tuple[ItemCheck, ...]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def failures(self) -> list[str]:
        return [f"({i.item}) n={i.n} {k}" for i in self.items for k, v in i.checks.items() if not v]

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "items": [
                {"item": i.item, "n": i.n, "name": i.name, "rank": i.rank, "chern": list(i.chern), "checks": i.checks}
                for i in self.items
            ],
        }

    def table(self) -> str:
        rows = [("item", "n", "bundle", "rank", "c1..cn", "ok")]
        for i in self.items:
            rows.append((i.item, str(i.n), i.name, str(i.rank), ",".join(map(str, i.chern)), "pass" if i.ok else "FAIL"))
        return _align(rows)


def _dual_alt_sum(entry) -> int:
    """h^2 - h^3 + h^4 of E^dual on P^4, the correction term of the rank formula."""
    e = entry.expr
    dual = e.dual() if isinstance(e, ComplexExpr) else Dual(e)
    h = bundle_cohomology(dual, 4, 0)
    if any(x is None for x in h[2:]):
        raise ValueError(f"cohomology of the dual of {entry.name} is not determined")
    return h[2] - h[3] + h[4]


def verify_thm_main() -> ThmReport:
    """Recompute rank and Chern data of the eight items of the classification.

    Items (i) and (ii) are checked on P^4, P^5 and P^6, the others on their own
    P^n. Checks: c_1 = 5, the congruence on the first four Chern classes, the
    P-functor pairing of partners (Chern classes, and rank and h^0 where h^0
    is determined by the cohomology table) and, on P^4, the rank formula.
    """
    items = []
    for n in (4, 5, 6):
        catalog = {e.name: e for e in named_bundle_catalog(n)}
        for item, name in _THM_ITEMS:
            if n not in _ITEM_N.get(item, (4, 5, 6)):
                continue
            e = catalog[name]
            checks = {"c1=5": e.chern[1] == C1, "schwarzenberger": schwarzenberger(e.chern)}
            if e.partner is not None:
                other = catalog[e.partner]
                checks["p-functor-chern"] = e.partner_chern.c == other.chern.c
                # the rank of P(E) is h^0(E) - rank(E), known when h^0 is determined
                if e.h0 is not None:
                    checks["p-functor-rank"] = e.h0 - e.rank == other.rank
                if e.h0 is not None and other.h0 is not None:
                    checks["h0-preserved"] = e.h0 == other.h0
            if n == 4:
                r = rank_formula(*e.c1234[1:], h2_dual=_dual_alt_sum(e))
                checks["rank-formula"] = r.integral and r.value == e.rank
            items.append(ItemCheck(item, n, name, e.rank, e.chern.c, checks))
    return ThmReport(tuple(items))


# -- output ----------------------------------------------------------------------


def records_to_json(records: Iterable[CandidateRecord]) -> str:
    return json.dumps([r.as_dict() for r in records], indent=2)


def format_records_table(records: Iterable[CandidateRecord]) -> str:
    rows = [("c2", "c3", "c4", "rank", "construction")]
    for r in records:
        c2, c3, c4 = r.triple
        rows.append((str(c2), str(c3), str(c4), "?" if r.rank is None else str(r.rank), r.construction or "-"))
    return _align(rows)


def _align(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows)
