import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pnbundles.chowring import ChernVector, euler_characteristic, rank_formula, schwarzenberger
from pnbundles.classifier import (
    CITED_SPECTRUM_EXCLUSIONS,
    PAIR_RULES,
    CandidateRecord,
    LiaisonData,
    admissible_spectra,
    c2_12_c3_rule,
    c2_12_companion_facts,
    c3_bookkeeping,
    filter_chern,
    format_records_table,
    fprimunstable_table,
    g_c3_bookkeeping,
    liaison_chi,
    records_to_json,
    verify_thm_main,
)
from pnbundles.cohomtab import enumerate_spectra

SEVEN = {(10, 10, 5), (11, 15, 16), (11, 13, 9), (12, 20, 28), (12, 18, 21), (12, 18, 15), (12, 16, 8)}


@pytest.fixture(scope="module")
def records():
    return filter_chern(4)


# -- filter_chern -------------------------------------------------------------------


def test_exactly_seven_triples(records):
    assert {r.triple for r in records} == SEVEN
    assert len(records) == 7
    assert [r.triple for r in records] == sorted(SEVEN)


def test_excluded_pairs(records):
    pairs = {r.triple[:2] for r in records}
    assert (12, 14) not in pairs and (10, 6) not in pairs


def test_ranks_and_constructions(records):
    by = {r.triple: r for r in records}
    assert by[(10, 10, 5)].construction == "5O(1)" and by[(10, 10, 5)].rank == 5
    assert by[(12, 16, 8)].rank == 6
    assert set(by[(12, 16, 8)].constructions) == {"thm-iii", "O(1)+E0"}
    assert {t: r.rank for t, r in by.items()} == {
        (10, 10, 5): 5, (11, 13, 9): 6, (11, 15, 16): 8, (12, 16, 8): 6,
        (12, 18, 15): 8, (12, 18, 21): 9, (12, 20, 28): 11,
    }


def test_traces_are_rechecked_independently(records):
    # each arithmetic rule named in a trace is re-evaluated from Riemann-Roch directly
    for r in records:
        c2, c3, c4 = r.triple
        assert r.rule_trace and schwarzenberger(r.chern)
        for tag in r.rule_trace:
            kind, name = tag.split(":", 1)
            assert kind in ("arithmetic", "cited")
            if tag == "arithmetic:parity":
                assert (c3 - 5 * c2) % 2 == 0
            elif tag == "arithmetic:h1(F(-2))>=0":
                # F on a hyperplane with h^0 = h^2 = h^3 = 0 at twist -2
                assert -euler_characteristic(ChernVector(3, r.rank, (5, c2, c3)), -2) >= 0
            elif tag == "arithmetic:riemann-roch-c4":
                assert euler_characteristic(ChernVector(4, r.rank, (5, c2, c3, c4)), -3) >= 0


def test_rank_matches_rank_formula(records):
    for r in records:
        assert rank_formula(*r.triple).value == r.rank


def test_partner_records(records):
    by = {r.triple: r for r in records}
    p = by[(12, 16, 8)].partner
    assert p.rank == 9 and p.c == (5, 13, 21, 21)


def test_disabling_a_cited_rule_reopens_candidates():
    got = {r.triple: r for r in filter_chern(4, disabled=["no(12,14)"])}
    assert {t for t in got if t[:2] == (12, 14)} == {(12, 14, 1), (12, 14, 7)}
    assert got[(12, 14, 7)].construction is None
    assert all("cited:no(12,14)" not in r.rule_trace for r in got.values())
    extra = {r.triple for r in filter_chern(4, disabled=["c3=c2=>c2=10"])} - SEVEN
    assert extra == {(11, 11, 2), (12, 12, 0)}


def test_filter_validation():
    with pytest.raises(ValueError):
        filter_chern(5)
    with pytest.raises(ValueError):
        filter_chern(4, range(0, 14))
    with pytest.raises(ValueError):
        filter_chern(4, disabled=["nope"])
    assert filter_chern(4, range(0, 10)) == []


def test_rules_are_named_and_typed():
    names = [r.name for r in PAIR_RULES]
    assert len(set(names)) == len(names)
    assert {r.kind for r in PAIR_RULES} == {"arithmetic", "cited"}
    assert all(r.citation for r in PAIR_RULES if r.kind == "cited")


def test_candidate_record_invariants():
    c = ChernVector(4, 5, (5, 10, 10, 5))
    with pytest.raises(ValueError):
        CandidateRecord(4, 5, c, None, ())
    with pytest.raises(ValueError):
        CandidateRecord(4, 2, ChernVector(4, 2, (5, 8, 0, 0)), None, ("arithmetic:parity",))


def test_json_and_table_output(records):
    data = json.loads(records_to_json(records))
    assert [tuple(d["chern"][1:]) for d in data] == [r.triple for r in records]
    assert all(d["assumptions"] for d in data)
    table = format_records_table(records)
    assert len(table.splitlines()) == 8 and "thm-iii" in table


# -- c_2 = 12 and liaison ---------------------------------------------------------------


def test_c2_12_rule():
    assert c2_12_c3_rule(2) == {16, 18, 20}
    assert c2_12_c3_rule(0) is None
    assert c2_12_companion_facts(16) == {"h1_fm3": 1, "h0_fm1": 2}
    with pytest.raises(ValueError):
        c2_12_c3_rule(-1)
    with pytest.raises(ValueError):
        c2_12_companion_facts(14)


def test_liaison_values():
    assert liaison_chi(4, 4, 12, 4) == 16
    assert liaison_chi(3, 5, 13, 2) == 22
    assert liaison_chi(3, 4, 6, 6) == 0
    with pytest.raises(ValueError):
        liaison_chi(4, 4, 12, 3)


@given(st.integers(1, 8), st.integers(1, 8), st.data())
def test_liaison_antisymmetric_and_linear(a, b, data):
    d = data.draw(st.integers(0, a * b))
    assert liaison_chi(a, b, d, a * b - d) == -liaison_chi(a, b, a * b - d, d)
    if d + 1 <= a * b:
        step = liaison_chi(a, b, d + 1, a * b - d - 1) - liaison_chi(a, b, d, a * b - d)
        assert step == a + b - 4


def test_liaison_data():
    y = LiaisonData((4, 4), 12, 4, chi_y=-14)
    assert y.complete().chi_y2 == 2
    assert LiaisonData((4, 4), 12, 4, chi_y2=2).complete().chi_y == -14
    with pytest.raises(ValueError):
        LiaisonData((4, 4), 12, 5)
    with pytest.raises(ValueError):
        LiaisonData((4, 4), 12, 4, chi_y=0, chi_y2=0)


def test_c3_bookkeeping():
    assert g_c3_bookkeeping(2) == 0 and c3_bookkeeping(chi_y2=2) == 16
    assert c3_bookkeeping(chi_y=-14) == 16
    assert c3_bookkeeping(chi_y2=0) == 20
    assert c3_bookkeeping(chi_y=-14, chi_y2=2) == 16
    with pytest.raises(ValueError):
        c3_bookkeeping(chi_y=-14, chi_y2=0)
    with pytest.raises(ValueError):
        c3_bookkeeping()


@given(st.integers(-30, 30))
def test_bookkeeping_consistent_with_liaison(chi_y):
    chi_y2 = chi_y + liaison_chi(4, 4, 12, 4)
    assert c3_bookkeeping(chi_y=chi_y) == c3_bookkeeping(chi_y2=chi_y2)
    assert c3_bookkeeping(chi_y=chi_y) - g_c3_bookkeeping(chi_y2) == 2 * liaison_chi(4, 4, 12, 4) - 16


# -- unstable quotient cases -----------------------------------------------------------


def test_unstable_cases():
    cases = {c.label: c for c in fprimunstable_table()}
    assert [c.rank for c in cases.values()] == [3, 4, 5]
    ii = cases["ii"].chern(12)
    assert ii.rank == 4 and ii.c == (5, 12, 8)
    assert cases["i"].sub_c2(10) == 2
    assert cases["iii"].sub_c2(10) == 1
    with pytest.raises(ValueError):
        cases["ii"].chern(11)


def test_unstable_case_classes_are_consistent():
    for case in fprimunstable_table():
        for c2 in case.c2_values:
            c = case.chern(c2)
            assert c.rank == case.rank
            assert c.c == (5, c2, case.c3(c2))


# -- spectra and the main regression -----------------------------------------------------


def test_cited_spectrum_exclusion():
    assert (1, 1, 0, -1) in {s.k for s in enumerate_spectra(4, -6)}
    kept = [s.k for s, _ in admissible_spectra(4, -6)]
    assert kept == [(1, 0, 0, 0)]
    assert set(CITED_SPECTRUM_EXCLUSIONS) == {(1, 1, 0, -1)}
    s, trace = admissible_spectra(4, 4)[0]
    assert any(t.startswith("cited:") for t in trace)


def test_verify_thm_main():
    rep = verify_thm_main()
    assert rep.ok and rep.failures() == []
    assert len(rep.items) == 12
    by = {(i.item, i.n): i for i in rep.items}
    assert by[("v", 5)].rank == 5
    assert by[("vii", 6)].chern[0] == 5 and by[("vii", 6)].name == "thm-vii"
    assert by[("i", 4)].rank == 1
    assert all("rank-formula" in i.checks for i in rep.items if i.n == 4)
    assert json.loads(json.dumps(rep.as_dict()))["ok"] is True
    assert "FAIL" not in rep.table()
