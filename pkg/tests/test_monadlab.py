import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import chern_from_roots, koszul_oracle, omega_chern_oracle
from pnbundles.chowring import ChernVector, chern_dual, euler_characteristic, p_functor, schwarzenberger
from pnbundles.cohomtab import UNDETERMINED, line_cohomology
from pnbundles.monadlab import (
    ComplexExpr,
    Dual,
    Line,
    Multiple,
    Omega,
    PofLine,
    Sum,
    TangentTwist,
    Twist,
    bundle_class,
    bundle_cohomology,
    complex_cohomology_bundle,
    expr_data,
    monad_cohomology_table,
    named_bundle_catalog,
    parse_bundle,
)


def catalog(n):
    return {e.name: e for e in named_bundle_catalog(n)}


def simple_bundles():
    """Random sums of line bundles, Omega^p(t) and T(-1) on a fixed P^n."""
    def atom(n):
        return st.one_of(
            st.integers(-3, 3).map(Line),
            st.tuples(st.integers(0, n), st.integers(-2, 4)).map(lambda t: Omega(*t)),
            st.just(TangentTwist()),
            st.integers(0, 2).map(PofLine),
        )

    return st.integers(2, 5).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(atom(n), min_size=1, max_size=3).map(lambda xs: xs[0] if len(xs) == 1 else Sum(tuple(xs))))
    )


# -- basic bundles ------------------------------------------------------------------


def test_omega_on_p4():
    e = Omega(1, 2)
    assert e.chern(4).rank == 4 and e.chern(4)[1] == 3
    assert e.cohomology(4) == (10, 0, 0, 0, 0)


@pytest.mark.parametrize("n", range(1, 6))
def test_omega_classes_match_oracle(n):
    for p in range(n + 1):
        for t in range(-2, 4):
            assert list(Omega(p, t).chern(n).c) == omega_chern_oracle(n, p, t)


@pytest.mark.parametrize("n", range(2, 6))
def test_omega_cohomology_matches_koszul_oracle(n):
    for p in range(n + 1):
        for l in range(-6, 7):
            assert Omega(p, 0).cohomology(n, l) == koszul_oracle(n, p, l)


def test_tangent_and_p_of_line():
    assert TangentTwist().chern(4).c == (1, 1, 1, 1)
    assert PofLine(1).chern(4) == TangentTwist().chern(4)
    assert PofLine(1).cohomology(4) == TangentTwist().cohomology(4) == (5, 0, 0, 0, 0)
    assert PofLine(0).chern(3).rank == 0
    with pytest.raises(ValueError):
        PofLine(-1).chern(3)
    with pytest.raises(ValueError):
        Omega(5, 0).chern(4)


def test_split_classes_match_roots():
    e = Sum((Multiple(3, Line(1)), Line(2), Line(-1)))
    assert list(e.chern(4).c) == chern_from_roots([1, 1, 1, 2, -1], 4)
    assert e.chern(4).rank == 5


@given(simple_bundles())
def test_sum_dual_twist_laws(t):
    n, e = t
    c = e.chern(n)
    assert Dual(e).chern(n) == chern_dual(c)
    assert Dual(Dual(e)).chern(n).c == c.c
    assert Twist(Twist(e, 1), -1).chern(n).c == c.c
    assert Multiple(2, e).chern(n).c == Sum((e, e)).chern(n).c
    assert Multiple(2, e).chern(n).rank == 2 * c.rank


@given(simple_bundles(), st.integers(-5, 5))
def test_cohomology_has_the_right_euler_characteristic(t, l):
    n, e = t
    h = e.cohomology(n, l)
    assert sum((-1) ** q * x for q, x in enumerate(h)) == euler_characteristic(e.chern(n), l)


@given(simple_bundles(), st.integers(-5, 5))
def test_serre_duality_for_dual(t, l):
    n, e = t
    h = Dual(e).cohomology(n, l)
    assert h == tuple(reversed(e.cohomology(n, -l - n - 1)))


# -- parser --------------------------------------------------------------------------


def test_parse_bundle():
    assert parse_bundle("O(1)") == Line(1)
    assert parse_bundle("3O(1) + T(-1)") == Sum((Multiple(3, Line(1)), TangentTwist()))
    assert parse_bundle("2*Om(1,2)") == Multiple(2, Omega(1, 2))
    assert parse_bundle("dual(twist(Om(2,0),3))") == Dual(Twist(Omega(2, 0), 3))
    assert parse_bundle("P(O(5))") == PofLine(5)
    assert parse_bundle(str(Sum((Line(-2), Omega(1, 1))))) == Sum((Line(-2), Omega(1, 1)))
    for bad in ("", "O(1", "Q(1)", "T(0)", "P(T(-1))", "O(1) $", "O(1) O(2)"):
        with pytest.raises(ValueError):
            parse_bundle(bad)


# -- complexes ---------------------------------------------------------------------------


def test_complex_validation():
    with pytest.raises(ValueError):
        ComplexExpr({-1: Line(0), 1: Line(1)})
    with pytest.raises(ValueError):
        ComplexExpr({-1: Line(0), 0: Line(1)}, "monad")
    with pytest.raises(ValueError):
        ComplexExpr({0: Line(0)}, "bogus")
    with pytest.raises(ValueError):
        complex_cohomology_bundle(ComplexExpr({-1: Multiple(2, Line(0)), 0: Line(1)}), 3)


def test_named_display_classes():
    c4 = catalog(4)
    assert c4["thm-iii"].rank == 6 and c4["thm-iii"].chern.c == (5, 12, 16, 8)
    assert c4["thm-iv"].rank == 9 and c4["thm-iv"].chern.c == (5, 13, 21, 21)
    c5 = catalog(5)
    assert c5["thm-v"].rank == 5 and c5["thm-v"].chern.c == (5, 12, 16, 8, 0)
    c6 = catalog(6)
    assert c6["thm-vii"].rank == 6 and c6["thm-viii"].rank == 15


def test_display_on_p4_cohomology():
    t = monad_cohomology_table(catalog(4)["thm-iii"].expr, 4, -5, 1)
    assert t(1, -2) == 1
    assert t(2, -3) == 1 and t(2, -4) == 1
    assert t(0, 0) == 15 and t.fully_determined()
    assert all(t(q, -1) == 0 for q in range(5))


def test_display_on_p5_cohomology():
    t = monad_cohomology_table(catalog(5)["thm-v"].expr, 5, -6, 1)
    assert t(1, -2) == 0 and t(2, -3) == 1 and t(3, -5) == 1
    assert t(0, 0) == 14


def test_horrocks_type_display_on_p3():
    # 0 -> O(-1) -> 4 O + 2 O(-1) -> O(2) -> 0, twisted by 2
    cx = ComplexExpr({-1: Line(-1), 0: Sum((Multiple(4, Line(0)), Multiple(2, Line(-1)))), 1: Line(2)}, "monad", 2)
    c = complex_cohomology_bundle(cx, 3)
    assert c.rank == 4 and c.c == (5, 12, 8)
    t = monad_cohomology_table(cx, 3, -4, 0)
    assert t(1, -4) == 1 and t(1, -3) == 4
    # the connecting ranks at -2 are not determined by the terms alone
    assert t(1, -2) is UNDETERMINED
    assert t(2, -2) == 0 and t(3, -2) == 0
    assert euler_characteristic(c, -2) == -6


def test_dual_complex():
    cx = catalog(4)["thm-iii"].expr
    assert complex_cohomology_bundle(cx.dual(), 4) == chern_dual(complex_cohomology_bundle(cx, 4))
    with pytest.raises(ValueError):
        ComplexExpr({-2: Line(-2), -1: Line(-1), 0: Line(0)}, "resolution").dual()


@pytest.mark.parametrize("n", (4, 5, 6))
def test_complex_tables_respect_euler_characteristic(n):
    for entry in named_bundle_catalog(n):
        data = expr_data(entry.expr, n, -n - 2, 2)
        for l in range(-n - 2, 3):
            chi = data.table.chi(l)
            if chi is not None:
                assert chi == euler_characteristic(data.chern, l)


def test_bundle_helpers_agree():
    for entry in named_bundle_catalog(4):
        assert bundle_class(entry.expr, 4) == entry.chern
        h = bundle_cohomology(entry.expr, 4, 0)
        assert h[0] == entry.h0


# -- catalogue ---------------------------------------------------------------------------


@pytest.mark.parametrize("n", (4, 5, 6))
def test_catalog_properties(n):
    cat = catalog(n)
    for e in cat.values():
        assert e.chern[1] == 5 and e.schwarzenberger == schwarzenberger(e.chern) is True
        if e.partner is not None:
            other = cat[e.partner]
            assert e.partner_chern.c == other.chern.c
            if e.h0 is not None:
                assert e.partner_chern == p_functor(e.chern, e.h0)
                assert e.h0 - e.rank == other.rank


def test_catalog_values_on_p4():
    expect = {
        "5O(1)": (5, (10, 10, 5), 25),
        "4O(1)+T(-1)": (8, (11, 15, 16), 25),
        "3O(1)+2T(-1)": (11, (12, 20, 28), 25),
        "2O(1)+Om(1,2)": (6, (11, 13, 9), 20),
        "O(1)+T(-1)+Om(1,2)": (9, (12, 18, 21), 20),
        "2O(1)+Om(2,3)": (8, (12, 18, 15), 20),
        "thm-iii": (6, (12, 16, 8), 15),
    }
    cat = catalog(4)
    for name, (rank, triple, h0) in expect.items():
        assert (cat[name].rank, cat[name].c1234[1:], cat[name].h0) == (rank, triple, h0)
    assert cat["O(1)+E0"].chern.c == cat["thm-iii"].chern.c


def test_catalog_rejects_other_n():
    with pytest.raises(ValueError):
        named_bundle_catalog(3)


def test_chern_vector_of_complex_is_formal():
    assert isinstance(complex_cohomology_bundle(catalog(4)["thm-iii"].expr, 4), ChernVector)


def test_length_one_complex_is_the_line_bundle():
    t = monad_cohomology_table(ComplexExpr({0: Line(5)}), 4, -8, 2)
    for l in range(-8, 3):
        assert tuple(t(q, l) for q in range(5)) == line_cohomology(4, 5 + l)
