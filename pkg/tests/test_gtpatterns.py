from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from lefschetz import gtpatterns as gt
from lefschetz.gtpatterns import Convention, GTPattern, GTQuery
from lefschetz.hilbert import stanley_hf

queries = st.builds(
    lambda r, t, i, c: GTQuery.uniform(r, t, i, c),
    st.integers(1, 3), st.integers(1, 3), st.integers(0, 12), st.sampled_from(list(Convention)),
)


@given(queries)
@settings(max_examples=120)
def test_count_equals_enumeration(q):
    pats = list(gt.enumerate_patterns(q))
    assert gt.count(q) == len(pats)
    assert len(set(pats)) == len(pats)
    assert all(gt.is_valid(p, q) for p in pats)


@given(queries)
@settings(max_examples=60)
def test_enumerated_patterns_have_column_sums(q):
    for p in gt.enumerate_patterns(q):
        assert tuple(a + b for a, b in zip(p.top, p.bottom)) == q.column_sums
        assert p.bottom[0] == q.degree


def test_module_alias():
    q = GTQuery.uniform(2, 2, 1)
    assert list(gt.enumerate(q)) == list(gt.enumerate_patterns(q))


def test_query_validation():
    with pytest.raises(ValueError):
        GTQuery(2, (1, 1), 0)
    with pytest.raises(ValueError):
        GTQuery(0, (1,), 0)
    with pytest.raises(ValueError):
        GTPattern((1, 2), (1,))


def test_widths():
    assert GTQuery.uniform(2, 3, 0).column_sums == (9, 6, 3)
    q = GTQuery.uniform(2, 3, 0, Convention.WIDTH_R_PLUS_2)
    assert q.column_sums == (12, 9, 6, 0) and q.width == 4
    assert GTQuery.uniform(2, 3, 0, Convention.REVERSED_COLUMNS).column_sums == (3, 6, 9)


def test_resolution_reports_discrepancy():
    res = gt.resolve_convention({(2, 2), (3, 2), (2, 3)})
    assert isinstance(res, gt.Discrepancy)
    assert res.matching == ()
    m = res.first_failure[Convention.PAPER_AS_STATED]
    assert (m.r, m.t, m.i, m.count, m.expected) == (2, 2, 2, 3, 0)
    assert m.count == len(list(gt.enumerate_patterns(GTQuery.uniform(2, 2, 2))))


def test_resolution_with_single_candidate_that_matches_nothing():
    res = gt.resolve_convention([(2, 2)], [Convention.STANDARD_INTERLACING])
    assert isinstance(res, gt.Discrepancy)
    with pytest.raises(ValueError):
        gt.resolve_convention([])


def test_as_stated_counts_agree_in_low_degrees():
    for r, t in [(2, 2), (3, 2), (2, 3)]:
        for i in range(t):
            assert gt.count(GTQuery.uniform(r, t, i)) == stanley_hf(r, t, i)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_column_shift_injective(k):
    for t in range(2 * k + 3, 2 * k + 9):
        assert gt.gtodd_injection_check(k, t)


def test_column_shift_counting_path_matches_enumeration():
    assert gt.gtodd_injection_check(1, 6, limit=0) == gt.gtodd_injection_check(1, 6)
    with pytest.raises(ValueError):
        gt.gtodd_injection_check(1, 4)
