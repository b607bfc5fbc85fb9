from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from lefschetz.exactcore import binom
from lefschetz.hilbert import (
    AlgebraSpec,
    HilbertFunction,
    ci_hf,
    dci_socle_bounds,
    decruz_closed_form,
    dvl_hf,
    eulerian_alpha,
    failr1_margin,
    gtodd_margin,
    socle_b_odd,
    socle_degree,
    stanley_hf,
    stanley_hilbert_function,
    verlinde_dim,
)


def test_stanley_example_values():
    assert stanley_hilbert_function(4, 3).values == (1, 4, 10, 15, 15, 6)
    assert stanley_hf(4, 6, 9) == 120
    assert stanley_hf(4, 6, 10) == 111
    assert (stanley_hf(8, 2, 3), stanley_hf(8, 2, 4)) == (48, 42)


def test_stanley_truncates_after_first_zero():
    # the raw alternating sum turns positive again for large i
    assert [stanley_hf(2, 2, i) for i in range(8)] == [1, 2, 0, 0, 0, 0, 0, 0]


@given(st.integers(1, 7), st.integers(1, 6))
def test_stanley_low_degrees_are_free(r, t):
    for i in range(t):
        assert stanley_hf(r, t, i) == binom(r - 1 + i, r - 1)
    assert stanley_hf(r, t, t) == max(0, binom(r - 1 + t, r - 1) - (r + 1))


@given(st.integers(1, 7), st.integers(1, 6))
def test_stanley_vanishes_past_end(r, t):
    assert stanley_hf(r, t, r * (t - 1) + 1) == 0


@given(st.integers(1, 6), st.integers(1, 6))
def test_ci_is_symmetric(r, t):
    hf = ci_hf(r, t)
    assert hf.values == tuple(reversed(hf.values))
    assert sum(hf.values) == t ** r
    assert socle_degree(hf) == r * (t - 1)


def test_hilbert_function_container():
    hf = HilbertFunction((1, 3, 3, 1, 0, 0))
    assert hf.values == (1, 3, 3, 1)
    assert hf[10] == 0 and hf[-1] == 0
    assert hf.window(2, 5) == (3, 1, 0, 0)
    assert hf.socle_degree == 3
    assert socle_degree([0, 0]) == -1


def test_spec_validation():
    with pytest.raises(ValueError):
        AlgebraSpec(0, 3, (2, 2, 2))
    with pytest.raises(ValueError):
        AlgebraSpec(3, 2, (2,))
    spec = AlgebraSpec(3, 3, (2, 2, 3))
    assert spec.t is None and spec.family == "C"
    assert AlgebraSpec.uniform(4, 5, 3).family == "A"


def test_five_powers_window():
    assert (dvl_hf(4, 5), dvl_hf(5, 7), dvl_hf(3, 3)) == (36, 70, 15)
    with pytest.raises(ValueError):
        dvl_hf(4, 7)


@pytest.mark.parametrize("s", [2, 4, 6, 8, 10, 12])
def test_verlinde_matches_closed_form_even(s):
    assert verlinde_dim(s, 2) == decruz_closed_form(s)


def test_verlinde_rejects_half_integer_degree():
    with pytest.raises(ValueError):
        verlinde_dim(7, 2)


def test_socle_helpers():
    assert socle_b_odd(7, 2) == 4
    assert dci_socle_bounds(2, 14) == (26, 39)
    with pytest.raises(ValueError):
        socle_b_odd(4, 2)


def test_margins():
    assert (failr1_margin(2, 6), failr1_margin(4, 2), failr1_margin(2, 3)) == (9, 6, 0)
    assert [eulerian_alpha(k) for k in (2, 3, 4)] == [1, 10, 245]
    with pytest.raises(ValueError):
        gtodd_margin(1, 4)
    assert isinstance(gtodd_margin(1, 5), int)
