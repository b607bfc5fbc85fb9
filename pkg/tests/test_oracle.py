from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from lefschetz import oracle
from lefschetz.exactcore import binom
from lefschetz.hilbert import AlgebraSpec, ci_hf, stanley_hf
from lefschetz.oracle import OracleConfig, OutOfDeskScale, InconclusiveError


def test_ideal_dims(cfg):
    forms = oracle.random_forms(4, 5, cfg)
    assert oracle.power_ideal_dim(forms, 3, 3) == 5
    assert oracle.power_ideal_dim(forms, 3, 2) == 0
    assert oracle.power_ideal_dim(oracle.random_forms(3, 5, cfg), 3, 4) == 14
    assert oracle.ideal_dim(AlgebraSpec.uniform(4, 5, 3), cfg, 3) == 5


def test_example_hf_and_rank(cfg):
    spec = AlgebraSpec.uniform(4, 5, 3)
    assert oracle.algebra_hf(spec, cfg).values == (1, 4, 10, 15, 15, 6)
    rep = oracle.wlp_verdict(spec, cfg)
    assert not rep.wlp and rep.failures == (3,)
    m = rep.at(3)
    assert (m.rank, m.kernel, m.cokernel) == (14, 1, 1)
    past = rep.at(99)
    assert (past.dim_source, past.dim_target) == (0, 0) and past.full_rank


@pytest.mark.parametrize("r,n,t,values", [
    (4, 5, 6, (1, 4, 10, 20, 35, 56, 79, 100, 115, 120, 111, 84, 45)),
    (5, 9, 3, (1, 5, 15, 26, 25)),
    (6, 14, 3, (1, 6, 21, 42, 42)),
])
def test_published_hilbert_functions(cfg, r, n, t, values):
    assert oracle.algebra_hf(AlgebraSpec.uniform(r, n, t), cfg).values == values


def test_hf_max_degree(cfg):
    hf = oracle.algebra_hf(AlgebraSpec.uniform(4, 8, 8), cfg, max_degree=15)
    assert hf.window(8, 15) == (157, 188, 206, 204, 175, 112, 8, 0)


def test_seven_quadrics_three_routes(cfg):
    # the quotient engine, the literal ideal and the closed form all agree
    spec = AlgebraSpec.uniform(6, 7, 2)
    hf = oracle.algebra_hf(spec, cfg)
    forms = oracle.random_forms(6, 7, cfg)
    literal = tuple(binom(5 + j, 5) - oracle.power_ideal_dim(forms, 2, j) for j in range(6))
    assert hf.values == (1, 6, 14, 14)
    assert literal[:4] == hf.values and literal[4:] == (0, 0)
    assert tuple(stanley_hf(6, 2, j) for j in range(5)) == (1, 6, 14, 14, 0)
    assert oracle.mult_map_rank(spec, cfg, 2) == 13


@given(st.integers(2, 4), st.integers(0, 3), st.integers(1, 4), st.data())
@settings(max_examples=25)
def test_quotient_route_matches_literal(r, extra, t, data):
    n = r + extra
    spec = AlgebraSpec.uniform(r, n, t)
    cfg = OracleConfig(seed=data.draw(st.integers(0, 1000)), trials=1)
    hf = oracle.algebra_hf(spec, cfg)
    forms = oracle.random_forms(r, n, cfg)
    for j in range(len(hf) + 1):
        assert hf[j] == binom(r - 1 + j, r - 1) - oracle.power_ideal_dim(forms, t, j)


@given(st.integers(2, 4), st.integers(0, 2), st.integers(1, 4), st.data())
@settings(max_examples=25)
def test_rank_routes_agree(r, extra, t, data):
    # quotient route: dim A_{j+1} - dim (A/lA)_{j+1}; literal route: dims of I and I + (x_r)
    n = r + extra
    spec = AlgebraSpec.uniform(r, n, t)
    cfg = OracleConfig(seed=data.draw(st.integers(0, 1000)), trials=1)
    forms = oracle.random_forms(r, n, cfg)
    top = r * (t - 1) + 1
    for j in range(top):
        assert oracle.mult_map_rank(spec, cfg, j) == oracle.mult_map_rank_direct(forms, t, j)


@given(st.integers(3, 4), st.integers(0, 2), st.integers(2, 4))
@settings(max_examples=20)
def test_four_term_sequence(r, extra, t):
    # 0 -> K -> A_j -> A_{j+1} -> (A/lA)_{j+1} -> 0 with A/lA the same construction in r-1 variables
    cfg = OracleConfig(trials=2)
    spec = AlgebraSpec.uniform(r, r + extra, t)
    hf = oracle.algebra_hf(spec, cfg)
    restricted = oracle.algebra_hf(AlgebraSpec.uniform(r - 1, r + extra, t), cfg)
    for j in range(len(hf)):
        rk = oracle.mult_map_rank(spec, cfg, j)
        kernel = hf[j] - rk
        assert kernel >= 0
        assert hf[j] - kernel - hf[j + 1] + restricted[j + 1] == 0


@given(st.integers(2, 4), st.integers(0, 2), st.integers(1, 4))
@settings(max_examples=20)
def test_more_forms_shrink_the_algebra(r, extra, t):
    cfg = OracleConfig(trials=1)
    a = oracle.algebra_hf(AlgebraSpec.uniform(r, r + extra, t), cfg)
    b = oracle.algebra_hf(AlgebraSpec.uniform(r, r + extra + 1, t), cfg)
    assert all(b[j] <= a[j] for j in range(len(a) + 1))


@given(st.integers(1, 5), st.integers(1, 4))
@settings(max_examples=20)
def test_complete_intersection(r, t):
    cfg = OracleConfig(trials=1)
    assert oracle.algebra_hf(AlgebraSpec.uniform(r, r, t), cfg).values == ci_hf(r, t).values


def test_mixed_exponents(cfg):
    spec = AlgebraSpec(3, 3, (1, 2, 3))
    assert oracle.algebra_hf(spec, cfg).values == ci_hf(1, 2).values[:1] + (2, 2, 1)


def test_seeds_are_reproducible():
    a = oracle.random_forms(4, 6, OracleConfig(seed=5))
    b = oracle.random_forms(4, 6, OracleConfig(seed=5))
    c = oracle.random_forms(4, 6, OracleConfig(seed=6))
    assert a == b and a != c


def test_ranks_33_and_64(cfg):
    assert oracle.mult_map_rank(AlgebraSpec.uniform(4, 5, 4), cfg, 5) == 33
    assert oracle.mult_map_rank(AlgebraSpec.uniform(4, 5, 5), cfg, 7) == 64


def test_fat_points(cfg):
    assert oracle.fatpoint_h0h1(3, 4, [2] * 5, cfg) == (1, 1)
    assert oracle.fatpoint_h0h1(3, 5, [1] * 22, cfg) == (0, 1)
    assert oracle.fatpoint_h0h1(4, 5, [1] * 22, cfg) == (34, 0)
    assert oracle.fatpoint_h0h1(4, 4, [2] * 5, cfg) == (15, 0)
    assert oracle.fatpoint_h0h1(3, 3, [0, 0], cfg) == (10, 0)


def test_socle_degrees(cfg):
    assert oracle.socle_degree_oracle(AlgebraSpec.uniform(4, 6, 4), cfg) == 7
    assert oracle.socle_degree_oracle(AlgebraSpec.uniform(7, 9, 2), cfg) == 4


def test_not_artinian(cfg):
    spec = AlgebraSpec.uniform(4, 3, 2)
    with pytest.raises(InconclusiveError):
        oracle.algebra_hf(spec, cfg)
    hf = oracle.algebra_hf(spec, cfg, max_degree=5)
    assert not hf.complete and hf[5] > 0


def test_size_cap():
    cfg = OracleConfig(max_entries=100)
    with pytest.raises(OutOfDeskScale):
        oracle.algebra_hf(AlgebraSpec.uniform(4, 5, 6), cfg)


@pytest.mark.parametrize("prime", [2, 4, 1 << 33, 2 ** 31 - 3])
def test_bad_primes(prime):
    with pytest.raises(ValueError):
        OracleConfig(prime=prime)


def test_other_prime_agrees():
    spec = AlgebraSpec.uniform(4, 5, 3)
    assert oracle.algebra_hf(spec, OracleConfig(prime=65521)).values == (1, 4, 10, 15, 15, 6)
