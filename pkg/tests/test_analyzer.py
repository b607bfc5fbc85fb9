from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lefschetz import analyzer, oracle
from lefschetz.analyzer import TriState, Verdict, WlpReport
from lefschetz.hilbert import AlgebraSpec


def test_verdict_constraints():
    with pytest.raises(ValueError):
        Verdict(TriState.FAILS)
    assert str(Verdict.fails(3)) == "Fails at degree 3"
    assert str(Verdict.holds()) == "Holds"


@given(st.sampled_from(list(TriState)), st.integers(0, 50), st.text(max_size=20),
       st.lists(st.text(max_size=8), max_size=3))
def test_verdict_round_trip(state, degree, cause, cites):
    v = Verdict(state, degree if state is TriState.FAILS else None, cause, tuple(cites))
    assert Verdict.from_dict(json.loads(json.dumps(v.to_dict()))) == v


def test_peak_examples():
    p = analyzer.classify_peak(4, 3, 5)
    assert p.exceptional and not p.upper.full_rank and p.upper.rank == 14
    assert "Example 1.1" in p.citations
    q = analyzer.classify_peak(6, 2, 7)
    assert q.upper.dim_target - q.upper.rank == 1


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_peak_matches_oracle(r, cfg):
    for t in (1, 2, 3):
        for n in range(r, 12):
            p = analyzer.classify_peak(r, t, n)
            spec = AlgebraSpec.uniform(r, n, t)
            hf = oracle.algebra_hf(spec, cfg, max_degree=t + 1)
            for m in (p.lower, p.upper):
                if m is None:
                    continue
                assert (m.dim_source, m.dim_target) == (hf[m.j], hf[m.j + 1])
                assert m.rank == oracle.mult_map_rank(spec, cfg, m.j), (r, t, n, m.j)


def test_double_point_exceptions():
    assert analyzer.double_points_h0(2, 4, 5) == 1
    assert analyzer.double_points_h0(3, 2, 3) == 1
    assert analyzer.double_points_h0(2, 3, 3) == 1


def test_four_variables():
    v = analyzer.r4_threshold(6)
    assert v(15).state is TriState.FAILS and v(15).degree == 23
    assert v(26).state is TriState.HOLDS and v(14).state is TriState.HOLDS
    assert v(20).state is TriState.UNKNOWN
    assert v(27).state is TriState.FAILS
    assert analyzer.r4_threshold(5)(3).state is TriState.FAILS
    assert [analyzer.r4_formula_threshold(n) for n in (7, 8)] == [140, 704]
    with pytest.raises(ValueError):
        analyzer.r4_threshold(9)


def test_even_failure():
    f = analyzer.even_aci_failure(4, 6)
    assert (f.degree, f.margin, f.verdict.degree) == (9, 9, 9)
    assert analyzer.even_aci_failure(4, 3).verdict.state is TriState.FAILS
    with pytest.raises(ValueError):
        analyzer.even_aci_failure(5, 3)


def test_odd_failure():
    assert analyzer.odd_aci_check(4, Fraction(1, 2)).degree == 3
    with pytest.raises(ValueError):
        analyzer.odd_aci_check(1, Fraction(1, 3))


def test_odd_case_b_from_socle():
    # t = 5 > 2k+2 for k = 1; pass the socle directly
    v = analyzer.odd_aci_check(1, 2, socle_b=2 * 4)
    assert v.state is TriState.FAILS and "Lemma 5.7" in v.citations


def test_squares_scan():
    rows = {row.r: row for row in analyzer.squares_scan(15)}
    assert rows[8].margin_a == 6 and rows[9].margin_b == 1
    assert rows[13].margin_a == 0 and rows[15].margin_a == 208
    with pytest.raises(ValueError):
        analyzer.squares_scan(65)


def test_cross_check_agreement(cfg):
    rep = analyzer.cross_check(AlgebraSpec.uniform(4, 5, 3), cfg)
    assert rep.agreement and rep.symbolic.degree == 3 and rep.oracle.degree == 3
    assert {"Example 1.1", "Cor 3.3"} <= set(rep.citations)
    rep = analyzer.cross_check(AlgebraSpec.uniform(3, 5, 3), cfg)
    assert rep.agreement and rep.symbolic.state is TriState.HOLDS


@pytest.mark.parametrize("r", [4, 6])
def test_even_failures_confirmed(r, cfg):
    for t in range(2, 5 if r == 6 else 7):
        rep = analyzer.cross_check(AlgebraSpec.uniform(r, r + 1, t), cfg)
        assert rep.agreement, rep.diagnostics


def test_report_round_trip(cfg):
    rep = analyzer.cross_check(AlgebraSpec.uniform(4, 5, 3), cfg)
    again = WlpReport.from_dict(json.loads(json.dumps(rep.to_dict())))
    assert again == rep
    with pytest.raises(ValueError):
        WlpReport.from_dict({**rep.to_dict(), "schema": 2})


def test_out_of_scale_is_unknown():
    cfg = oracle.OracleConfig(max_entries=10)
    rep = analyzer.cross_check(AlgebraSpec.uniform(4, 5, 3), cfg)
    assert rep.oracle.state is TriState.UNKNOWN and rep.entries == ()
