from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from cable_cosmetic.diagrams import BraidWord
from cable_cosmetic.errors import (
    InputError,
    InvalidQueryError,
    ModelViolationError,
    ResourceLimitError,
    UnderdeterminedFitError,
)
from cable_cosmetic.invariants import Unavailable, alexander, delta2, jones_of, torus_delta2, v3_check
from cable_cosmetic.knots import Cable, Leaf, Torus, Unknot, mirror, parse_knot_expr, parse_leaf_class
from cable_cosmetic.obstructions import (
    CheckOutcome,
    Criterion,
    Verdict,
    congruence_holds,
    fit_cabling_constants,
    grid_slopes,
    obstruction_report,
    scan,
)
from cable_cosmetic.slopes import INFINITY, Slope, slope_new
from cable_cosmetic.tables import parse_table

HYP = Leaf("h", None, parse_leaf_class("hyperbolic"))


def outcome(report, criterion):
    return report.check(criterion).outcome


# -- invariants -------------------------------------------------------------------


def test_delta2_values():
    assert delta2(Torus(2, 3)) == 2
    assert delta2(Unknot()) == 0
    assert delta2(parse_knot_expr("C(1,2; T(2,3))")) == 8


def test_delta2_missing_leaf_data():
    with pytest.raises(InputError):
        delta2(HYP)


@st.composite
def small_braids(draw):
    strands = draw(st.integers(2, 4))
    gens = [g for i in range(1, strands) for g in (i, -i)]
    b = BraidWord(strands, tuple(draw(st.lists(st.sampled_from(gens), max_size=10))))
    assume(b.is_knot())
    return Leaf("b", b)


@settings(max_examples=50, deadline=None)
@given(small_braids())
def test_delta2_mirror_invariant(leaf):
    assert delta2(mirror(leaf)) == delta2(leaf)


def test_v3_values():
    assert v3_check(Unknot()) == 0
    assert v3_check(Torus(2, 3)) == -18
    # left-handed: t^-1 + t^-3 - t^-4 gives -6 - 60 + 120
    assert v3_check(Torus(-2, 3)) == 54
    assert v3_check(parse_knot_expr("C(1,2; T(2,3))")) == -108


def test_v3_over_cap_is_unavailable():
    v = v3_check(parse_knot_expr("C(1,2; C(1,2; T(2,5)))"))
    assert isinstance(v, Unavailable) and v.crossings > 26
    assert isinstance(v3_check(parse_knot_expr("C(1,2; T(2,5))")), Unavailable)
    assert v3_check(parse_knot_expr("C(1,2; T(2,5))"), max_crossings=29) == -612


def test_v3_without_diagram_is_unavailable():
    assert isinstance(v3_check(HYP), Unavailable)


def test_cable_alexander_uses_satellite_formula():
    k = parse_knot_expr("C(3,2; T(2,3))")
    expected = alexander(Torus(2, 3)).substitute_power(2) * alexander(Torus(3, 2))
    assert alexander(k) == expected


# -- congruence --------------------------------------------------------------------


def test_congruence_against_brute_force():
    for m in range(1, 51):
        for n in range(1, m):
            if gcd(m, n) != 1:
                continue
            brute = any((n * n + 1 - k * m) == 0 for k in range(0, n * n + 2))
            assert congruence_holds(m, n) == brute
            assert congruence_holds(-m, n) == brute


def test_congruence_examples():
    assert congruence_holds(5, 2)
    assert not congruence_holds(3, 1)
    assert congruence_holds(1, 7) and congruence_holds(-1, 7)


# -- reports -----------------------------------------------------------------------


def test_report_runs_every_check_in_order(figure_eight):
    rep = obstruction_report(figure_eight, Slope.of(3))
    assert [c.criterion for c in rep.checks] == list(Criterion)
    assert outcome(rep, Criterion.NI_WU_CONGRUENCE) is CheckOutcome.EXCLUDES
    assert outcome(rep, Criterion.NI_WU_TAU) is CheckOutcome.PASSES
    assert outcome(rep, Criterion.BOYER_LINES) is CheckOutcome.EXCLUDES


def test_congruence_passes_at_five_halves(figure_eight):
    rep = obstruction_report(figure_eight, slope_new(5, 2))
    assert outcome(rep, Criterion.NI_WU_CONGRUENCE) is CheckOutcome.PASSES


def test_opposite_and_infinity():
    rep = obstruction_report(Torus(2, 3), Slope.of(2), Slope.of(3))
    assert outcome(rep, Criterion.NI_WU_OPPOSITE) is CheckOutcome.EXCLUDES
    rep = obstruction_report(Torus(2, 3), Slope.of(2), INFINITY)
    assert outcome(rep, Criterion.KNOT_COMPLEMENT) is CheckOutcome.EXCLUDES


def test_equal_slopes_rejected():
    with pytest.raises(InvalidQueryError):
        obstruction_report(Torus(2, 3), Slope.of(2), Slope.of(2))
    with pytest.raises(InvalidQueryError):
        obstruction_report(Torus(2, 3), Slope.of(0))


def test_tau_handling(figure_eight):
    bare = Leaf("x", None, parse_leaf_class("hyperbolic"))
    assert outcome(obstruction_report(bare, Slope.of(2)), Criterion.NI_WU_TAU) is CheckOutcome.NOT_APPLICABLE
    assert outcome(obstruction_report(bare, Slope.of(2), tau=1), Criterion.NI_WU_TAU) is CheckOutcome.EXCLUDES
    assert outcome(obstruction_report(bare, Slope.of(2), tau=0), Criterion.NI_WU_TAU) is CheckOutcome.PASSES


def test_cable_main_theorem_evidence():
    rep = obstruction_report(Cable(3, 2, HYP), Slope.of(9))
    check = rep.check(Criterion.CABLE_MAIN_THEOREM)
    assert check.outcome is CheckOutcome.EXCLUDES
    assert check.evidence["verdict"]["reason"] == "FiberMultiplicities"
    multiplicities = [p["multiplicities"] for d in ("descriptor_r", "descriptor_neg_r")
                      for p in check.evidence[d]["pieces"] if p["type"] == "SFSPiece"]
    assert multiplicities == [[2, 3], [2, 15]]


def test_cable_of_undeclared_leaf_still_excluded():
    rep = obstruction_report(Cable(3, 2, Leaf("bare")), Slope.of(9))
    check = rep.check(Criterion.CABLE_MAIN_THEOREM)
    assert check.outcome is CheckOutcome.EXCLUDES and check.evidence is None


def test_unknot_report_is_unresolved():
    rep = obstruction_report(Unknot(), slope_new(5, 2))
    assert rep.verdict is Verdict.UNRESOLVED
    assert all(c.outcome is CheckOutcome.NOT_APPLICABLE for c in rep.checks)


def test_metadata_records_conventions():
    meta = obstruction_report(Torus(2, 3), Slope.of(5)).metadata
    assert "t + t^3 - t^4" in meta["jones_convention"]
    assert "|m|" in meta["congruence_convention"]


def test_checks_agree_with_direct_differentiation(five_two):
    rep = obstruction_report(five_two, Slope.of(7))
    d2 = alexander(five_two).derivative_at_one(2)
    v3 = jones_of(five_two).derivative_at_one(3)
    assert rep.check(Criterion.BOYER_LINES).detail == f"Delta''(1) = {d2}"
    assert rep.check(Criterion.ICHIHARA_WU).detail == f"V'''(1) = {v3}"


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(["T(2,3)", "T(-3,4)", "C(1,2; K(h))", "C(-3,2; T(2,5))", "C(2,5; C(1,2; K(h)))"]),
    st.integers(-30, 30).filter(bool),
    st.integers(1, 6),
)
def test_torus_and_cable_reports_never_unresolved(text, m, n):
    assume(gcd(m, n) == 1)
    k = parse_knot_expr(text, {"h": HYP})
    assert obstruction_report(k, slope_new(m, n)).verdict is Verdict.EXCLUDED


# -- fit ---------------------------------------------------------------------------


def test_fit_needs_samples():
    with pytest.raises(UnderdeterminedFitError):
        fit_cabling_constants(2, [Unknot()])


def test_fit_exact(figure_eight, five_two):
    fit = fit_cabling_constants(2, [Torus(2, 3), figure_eight, Torus(2, 5), five_two], max_crossings=40)
    assert fit.residual == 0
    assert fit.b == 0 and fit.e == 0
    assert (fit.a, fit.c, fit.d) == (Fraction(4), Fraction(4), Fraction(-18))


def test_fit_minimal_sample(figure_eight):
    fit = fit_cabling_constants(2, [Unknot(), Torus(2, 3), figure_eight, Torus(2, 5)], max_crossings=40)
    assert fit.residual == 0 and fit.b == 0 and fit.e == 0


def test_fit_respects_cap(figure_eight, five_two):
    with pytest.raises(ResourceLimitError):
        fit_cabling_constants(2, [Torus(2, 3), figure_eight, Torus(2, 5), five_two])


def test_fit_rejects_duplicate_only_sample():
    with pytest.raises(UnderdeterminedFitError):
        fit_cabling_constants(2, [Torus(2, 3), Torus(2, 3)])


def test_singular_design_rejected():
    from cable_cosmetic.obstructions import _solve_least_squares

    with pytest.raises(UnderdeterminedFitError):
        _solve_least_squares([[2, 1], [2, 1], [2, 1]], [1, 2, 3])


def test_model_violation_surfaces(monkeypatch, figure_eight):
    import cable_cosmetic.obstructions as ob

    real = ob._fit_row

    def skewed(k, q, sign, cap):
        row = real(k, q, sign, cap)
        if row.knot == "T(2,5)":
            row = ob.FitRow(row.knot, row.delta2, row.cable_delta2 + 1, row.v3, row.cable_v3)
        return row

    monkeypatch.setattr(ob, "_fit_row", skewed)
    with pytest.raises(ModelViolationError) as info:
        fit_cabling_constants(2, [Torus(2, 3), figure_eight, Torus(2, 5)], max_crossings=40)
    assert info.value.fit.residual != 0


# -- scan --------------------------------------------------------------------------


def test_grid_order():
    assert [str(s) for s in grid_slopes(3, 2)] == ["1/1", "1/2", "2/1", "3/1", "3/2"]
    with pytest.raises(InputError):
        grid_slopes(0, 1)


def test_scan_empty_table():
    assert list(scan(parse_table("name,kind,payload\n"), (3, 1))) == []


def test_scan_torus_row_all_excluded():
    table = parse_table('name,kind,payload\ntre,expr,"T(2,3)"\n')
    reports = list(scan(table, (3, 1)))
    assert [str(r.r) for r in reports] == ["1/1", "2/1", "3/1"]
    assert all(r.verdict is Verdict.EXCLUDED for r in reports)


def test_scan_reports_bad_rows_and_continues():
    table = parse_table('name,kind,payload\nbad,expr,"C(1,2; K(missing))"\ntre,expr,"T(2,3)"\n')
    records = list(scan(table, (2, 1)))
    assert records[0].to_json()["record"] == "diagnostic"
    assert [r.to_json()["record"] for r in records[1:]] == ["report", "report"]
