"""Regression manifest: published values, each recomputed from scratch.

Every item returns a status and a one-line detail. ``erratum`` marks items
where the published value is demonstrably wrong and the recomputed value is
confirmed by an independent route; those are reported, never hidden.
"""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from lefschetz import analyzer, gtpatterns, hilbert, oracle, surface
from lefschetz.hilbert import AlgebraSpec

PASS, FAIL, ERRATUM = "pass", "fail", "erratum"


@dataclass(frozen=True)
class Item:
    group: str
    name: str
    check: Callable[[oracle.OracleConfig], tuple[str, str]]


@dataclass(frozen=True)
class Outcome:
    item: Item
    status: str
    detail: str

    def line(self) -> str:
        return f"{self.status.upper():8s}{self.item.group}/{self.item.name}: {self.detail}"


def _expect(got, want) -> tuple[str, str]:
    if got == want:
        return PASS, f"{got}"
    return FAIL, f"got {got}, expected {want}"


_ITEMS: list[Item] = []


def item(group: str, name: str):
    def register(fn):
        _ITEMS.append(Item(group, name, fn))
        return fn

    return register


# -- closed forms -----------------------------------------------------------


@item("hilbert", "stanley-4-3")
def _(cfg):
    return _expect((hilbert.stanley_hf(4, 3, 3), hilbert.stanley_hf(4, 3, 5)), (15, 6))


@item("hilbert", "stanley-4-6")
def _(cfg):
    return _expect((hilbert.stanley_hf(4, 6, 9), hilbert.stanley_hf(4, 6, 10)), (120, 111))


@item("hilbert", "stanley-squares")
def _(cfg):
    got = tuple(hilbert.stanley_hf(r, 2, i) for r, i in ((8, 3), (8, 4), (9, 3), (9, 4)))
    return _expect(got, (48, 42, 75, 90))


@item("hilbert", "five-powers-window")
def _(cfg):
    return _expect((hilbert.dvl_hf(4, 5), hilbert.dvl_hf(5, 7), hilbert.dvl_hf(3, 3)), (36, 70, 15))


@item("hilbert", "verlinde-8-2")
def _(cfg):
    return _expect(hilbert.verlinde_dim(8, 2), 16)


@item("hilbert", "squares-middle-odd")
def _(cfg):
    # closed form for odd s, checked against the oracle in degree (s+1)/2
    hf = oracle.algebra_hf(AlgebraSpec.uniform(7, 9, 2), cfg)
    return _expect((hilbert.decruz_closed_form(7), hf[4]), (1, 1))


@item("hilbert", "squares-middle-even")
def _(cfg):
    hf = oracle.algebra_hf(AlgebraSpec.uniform(8, 10, 2), cfg)
    return _expect((hilbert.decruz_closed_form(8), hf[4]), (16, 16))


@item("hilbert", "socle-degree")
def _(cfg):
    return _expect((hilbert.socle_degree((1, 4, 10, 15, 15, 6)), hilbert.socle_b_odd(7, 2)), (5, 4))


@item("hilbert", "dci-bounds")
def _(cfg):
    table = {2: 2, 4: 7, 14: 31}
    inside = all(lo <= table[t] <= hi for t in table for lo, hi in [hilbert.dci_socle_bounds(2, t)])
    return _expect((hilbert.dci_socle_bounds(2, 4), hilbert.dci_socle_bounds(2, 14), inside),
                   ((6, 9), (26, 39), True))


@item("hilbert", "even-margins")
def _(cfg):
    got = (hilbert.failr1_margin(2, 6), hilbert.failr1_margin(4, 2), hilbert.failr1_margin(2, 3))
    return _expect(got, (9, 6, 0))


# -- surfaces ---------------------------------------------------------------


@item("surface", "conic-and-sextic")
def _(cfg):
    conic = surface.DivisorClass(2, (1,) * 5)
    sextic = surface.DivisorClass(6, (3,) + (2,) * 7)
    return _expect((conic.self_intersection(), sextic.self_intersection()), (-1, -1))


@item("surface", "effective")
def _(cfg):
    return _expect((surface.uniform_effective(6, 12, 5), surface.uniform_effective(8, 17, 6)), (True, True))


@item("surface", "irregular")
def _(cfg):
    got = (surface.uniform_irregular(5, 4, 2), surface.uniform_irregular(6, 2, 1),
           surface.uniform_irregular(8, 14, 5))
    return _expect(got, (True, False, False))


@item("surface", "curve-counts")
def _(cfg):
    return _expect(tuple(len(surface.minus_one_curves(n)) for n in range(1, 9)), (1, 3, 6, 10, 16, 27, 56, 240))


@item("surface", "injectivity-bound-8-8")
def _(cfg):
    return _expect(surface.injectivity_bound(8, 8), 11)


@item("surface", "worst-curve-six")
def _(cfg):
    table = {0: -2, 1: -3, 2: -4}
    got = {t % 3: surface.worst_curve_value(6, t, surface.five_thirds_degree(t)) for t in range(3, 30)}
    return _expect(got, table)


_SEVEN_PUBLISHED = {0: -5, 1: -2, 2: -4, 3: -6, 4: -3}
_EIGHT_PUBLISHED = {0: -6, 1: -11, 2: -5, 3: -10, 4: -4, 5: -9, 6: -3, 7: -8, 8: -2, 9: -7, 10: -12}


def _residue_table(n: int, modulus: int) -> dict[int, int]:
    out: dict[int, set[int]] = {}
    for t in range(3, 3 + 6 * modulus):
        v = surface.worst_curve_value(n, t, surface.injectivity_bound(n, t))
        out.setdefault(t % modulus, set()).add(v)
    return {k: min(v) if len(v) == 1 else tuple(sorted(v)) for k, v in sorted(out.items())}


@item("surface", "worst-curve-eight")
def _(cfg):
    return _expect(_residue_table(8, 11), _EIGHT_PUBLISHED)


@item("surface", "worst-curve-seven")
def _(cfg):
    got = _residue_table(7, 5)
    if got == _SEVEN_PUBLISHED:
        return PASS, str(got)
    shifted = {(k + 1) % 5: v for k, v in _SEVEN_PUBLISHED.items()}
    if got == shifted:
        # independent confirmation: h^1 of the restricted class on P^2 turns
        # positive exactly at the injectivity bound
        for t in range(3, 7):
            m = surface.injectivity_bound(7, t)
            h1 = [oracle.fatpoint_h0h1(3, k, [k - t + 1] * 7, cfg)[1] for k in (m - 1, m)]
            if h1[0] != 0 or h1[1] <= 0:
                return FAIL, f"h^1 at t={t}, m={m - 1},{m}: {h1}"
        return ERRATUM, f"published table is offset by one residue class; computed {got}"
    return FAIL, f"computed {got}, published {_SEVEN_PUBLISHED}"


# -- oracle -----------------------------------------------------------------


@item("oracle", "ideal-dims")
def _(cfg):
    f4 = oracle.random_forms(4, 5, cfg)
    f3 = oracle.random_forms(3, 5, cfg)
    got = (oracle.power_ideal_dim(f4, 3, 3, cfg.prime), oracle.power_ideal_dim(f4, 3, 2, cfg.prime),
           oracle.power_ideal_dim(f3, 3, 4, cfg.prime))
    return _expect(got, (5, 0, 14))


@item("oracle", "hf-4-6")
def _(cfg):
    hf = oracle.algebra_hf(AlgebraSpec.uniform(4, 5, 6), cfg)
    return _expect(hf.values, (1, 4, 10, 20, 35, 56, 79, 100, 115, 120, 111, 84, 45))


@item("oracle", "hf-eight-eighth-powers")
def _(cfg):
    hf = oracle.algebra_hf(AlgebraSpec.uniform(4, 8, 8), cfg)
    return _expect(hf.window(8, 15), (157, 188, 206, 204, 175, 112, 8, 0))


@item("oracle", "hf-nine-cubes")
def _(cfg):
    return _expect(oracle.algebra_hf(AlgebraSpec.uniform(5, 9, 3), cfg).values, (1, 5, 15, 26, 25))


@item("oracle", "five-powers-hf")
def _(cfg):
    got = (oracle.algebra_hf(AlgebraSpec.uniform(4, 5, 4), cfg).values,
           oracle.algebra_hf(AlgebraSpec.uniform(4, 5, 5), cfg).values)
    return _expect(got, ((1, 4, 10, 20, 30, 36, 34, 20), (1, 4, 10, 20, 35, 51, 64, 70, 65, 45, 16)))


@item("oracle", "ranks-33-64")
def _(cfg):
    got = (oracle.mult_map_rank(AlgebraSpec.uniform(4, 5, 4), cfg, 5),
           oracle.mult_map_rank(AlgebraSpec.uniform(4, 5, 5), cfg, 7))
    return _expect(got, (33, 64))


@item("oracle", "wlp-example")
def _(cfg):
    rep = oracle.wlp_verdict(AlgebraSpec.uniform(4, 5, 3), cfg)
    return _expect((rep.failures, rep.at(3).rank), ((3,), 14))


@item("oracle", "wlp-three-variables")
def _(cfg):
    return _expect(oracle.wlp_verdict(AlgebraSpec.uniform(3, 5, 3), cfg).wlp, True)


@item("oracle", "wlp-seven-quadrics")
def _(cfg):
    spec = AlgebraSpec.uniform(6, 7, 2)
    rep = oracle.wlp_verdict(spec, cfg)
    published = (1, 6, 14, 14, 5)
    if rep.failures != (2,) or rep.at(2).cokernel != 1:
        return FAIL, f"failures {rep.failures}, cokernel {rep.at(2).cokernel}"
    if rep.hf.values == published:
        return PASS, f"fails at 2, HF {rep.hf.values}"
    forms = oracle.random_forms(6, 7, cfg)
    literal = tuple(hilbert.binom(5 + j, 5) - oracle.power_ideal_dim(forms, 2, j, cfg.prime) for j in range(5))
    closed = tuple(hilbert.stanley_hf(6, 2, j) for j in range(5))
    if literal[:len(rep.hf)] == rep.hf.values and closed[:len(rep.hf)] == rep.hf.values and literal[4] == 0:
        return ERRATUM, (f"fails at 2 with cokernel 1 as published; HF is {rep.hf.values}, "
                         f"not {published} (literal ideal and closed form agree)")
    return FAIL, f"HF {rep.hf.values}"


@item("oracle", "fat-points")
def _(cfg):
    got = (
        oracle.fatpoint_h0h1(3, 4, [2] * 5, cfg),
        oracle.fatpoint_h0h1(3, 6, [3] * 5, cfg)[1],
        oracle.fatpoint_h0h1(3, 8, [4] * 5, cfg)[1],
        oracle.fatpoint_h0h1(3, 5, [1] * 22, cfg)[1],
        oracle.fatpoint_h0h1(4, 5, [1] * 22, cfg)[1],
        oracle.fatpoint_h0h1(4, 4, [2] * 5, cfg)[0],
    )
    return _expect(got, ((1, 1), 3, 6, 1, 0, 15))


@item("oracle", "socle-degrees")
def _(cfg):
    got = tuple(oracle.socle_degree_oracle(AlgebraSpec.uniform(r, n, t), cfg)
                for r, n, t in ((4, 6, 4), (4, 6, 9), (7, 9, 2), (4, 6, 8)))
    return _expect(got, (7, 19, 4, 16))


# -- analyzer ---------------------------------------------------------------


@item("analyzer", "peak")
def _(cfg):
    a = analyzer.classify_peak(4, 3, 5).upper
    b = analyzer.classify_peak(6, 2, 7).upper
    got = (a.full_rank, a.rank, b.full_rank, b.dim_target - b.rank)
    return _expect(got, (False, 14, False, 1))


@item("analyzer", "four-variable-bands")
def _(cfg):
    got = tuple(str(analyzer.r4_threshold(n)(t).state) for n, t in ((5, 3), (6, 26), (6, 20), (6, 15)))
    return _expect(got, ("Fails", "Holds", "Unknown", "Fails"))


@item("analyzer", "four-variable-thresholds")
def _(cfg):
    got = tuple(analyzer.r4_formula_threshold(n) for n in (7, 8))
    return _expect(got, (140, 704))


@item("analyzer", "even-failure")
def _(cfg):
    a = analyzer.even_aci_failure(4, 6)
    b = analyzer.even_aci_failure(8, 2)
    return _expect((a.degree, a.margin, str(a.verdict), b.degree, str(b.verdict)),
                   (9, 9, "Fails at degree 9", 3, "Fails at degree 3"))


@item("analyzer", "odd-failure")
def _(cfg):
    return _expect(str(analyzer.odd_aci_check(4, Fraction(1, 2))), "Fails at degree 3")


@item("analyzer", "squares")
def _(cfg):
    rows = {row.r: row for row in analyzer.squares_scan(9)}
    got = (rows[8].margin_a, str(rows[8].verdict), rows[9].margin_b, str(rows[9].verdict))
    return _expect(got, (6, "Fails at degree 3", 1, "Fails at degree 3"))


@item("analyzer", "cross-check")
def _(cfg):
    a = analyzer.cross_check(AlgebraSpec.uniform(4, 5, 3), cfg)
    b = analyzer.cross_check(AlgebraSpec.uniform(3, 5, 3), cfg)
    got = (str(a.symbolic), str(a.oracle), a.agreement, str(b.symbolic), str(b.oracle), b.agreement)
    return _expect(got, ("Fails at degree 3", "Fails at degree 3", True, "Holds", "Holds", True))


@item("analyzer", "six-powers-t15")
def _(cfg):
    spec = AlgebraSpec.uniform(4, 6, 15)
    verdict = analyzer.r4_threshold(6)(15)
    hf = oracle.algebra_hf(spec, cfg, max_degree=24)
    rank = oracle.mult_map_rank(spec, cfg, 23)
    h1 = oracle.fatpoint_h0h1(3, 24, [10] * 6, cfg)[1]
    got = (verdict.degree, hf[23], hf[24], h1, rank < min(hf[23], hf[24]))
    return _expect(got, (23, 1610, 1605, 6, True))


@item("analyzer", "six-powers-t26")
def _(cfg):
    # one trial suffices: a full-rank specialization certifies full rank
    one = oracle.OracleConfig(cfg.prime, cfg.seed, 1, cfg.jobs, cfg.max_entries)
    spec = AlgebraSpec.uniform(4, 6, 26)
    m = surface.five_thirds_degree(26)
    hf = oracle.algebra_hf(spec, one, max_degree=m)
    rank = oracle.mult_map_rank(spec, one, m - 1)
    h1 = oracle.fatpoint_h0h1(3, m, [m - 25] * 6, one)[1]
    got = (str(analyzer.r4_threshold(6)(26)), h1, hf[m - 1] - hf[m], rank == hf[m])
    return _expect(got, ("Holds", 36, 36, True))


# -- patterns ---------------------------------------------------------------


@item("gt", "resolve")
def _(cfg):
    res = gtpatterns.resolve_convention({(2, 2), (3, 2), (2, 3)})
    if isinstance(res, gtpatterns.Convention):
        return PASS, f"convention {res}"
    m = res.first_failure[gtpatterns.Convention.PAPER_AS_STATED]
    return _expect((m.r, m.t, m.i, m.count, m.expected), (2, 2, 2, 3, 0))


@item("gt", "odd-injection")
def _(cfg):
    return _expect((gtpatterns.gtodd_injection_check(1, 5), gtpatterns.gtodd_injection_check(2, 8)), (True, True))


# -- command line -------------------------------------------------------------


def _run_cli(argv: list[str]) -> tuple[int, str]:
    from lefschetz.cli import main

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def _seed_args(cfg) -> list[str]:
    return ["--seed", str(cfg.seed), "--prime", str(cfg.prime), "--trials", str(cfg.trials)]


@item("cli", "hf-example")
def _(cfg):
    code, out = _run_cli(["hf", "-r", "4", "-n", "5", "-t", "3", "--format", "csv"] + _seed_args(cfg))
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    return _expect((code, tuple(int(r[2]) for r in rows)), (0, (1, 4, 10, 15, 15, 6)))


@item("cli", "hf-window")
def _(cfg):
    code, out = _run_cli(["hf", "-r", "4", "-n", "8", "-t", "8", "--from", "8", "--to", "15",
                          "--format", "csv"] + _seed_args(cfg))
    rows = [line.split(",") for line in out.strip().splitlines()[1:]]
    return _expect((code, tuple(int(r[2]) for r in rows)), (0, (157, 188, 206, 204, 175, 112, 8, 0)))


@item("cli", "wlp-json")
def _(cfg):
    code, out = _run_cli(["wlp", "-r", "4", "-n", "5", "-t", "3", "--format", "json"] + _seed_args(cfg))
    d = json.loads(out)
    cited = {"Example 1.1", "Cor 3.3"} <= set(d["citations"])
    return _expect((code, d["symbolic"]["state"], d["symbolic"]["degree"], cited), (0, "Fails", 3, True))


@item("cli", "wlp-holds")
def _(cfg):
    code, out = _run_cli(["wlp", "-r", "3", "-n", "5", "-t", "3", "--format", "json"] + _seed_args(cfg))
    return _expect((code, json.loads(out)["symbolic"]["state"]), (0, "Holds"))


@item("cli", "wlp-quadrics")
def _(cfg):
    code, out = _run_cli(["wlp", "-r", "6", "-n", "7", "-t", "2", "--format", "json"] + _seed_args(cfg))
    d = json.loads(out)
    return _expect((code, d["symbolic"]["state"], d["symbolic"]["degree"]), (0, "Fails", 2))


@item("cli", "surface-irregular")
def _(cfg):
    code, out = _run_cli(["surface", "irregular", "-n", "5", "-d", "4", "-m", "2"])
    return _expect((code, out.strip().split()[0]), (0, "true"))


# ---------------------------------------------------------------------------


def items(only: list[str] | None = None) -> list[Item]:
    if not only:
        return list(_ITEMS)
    unknown = set(only) - groups()
    if unknown:
        raise ValueError(f"unknown groups: {', '.join(sorted(unknown))}")
    return [it for it in _ITEMS if it.group in only]


def groups() -> set[str]:
    return {it.group for it in _ITEMS}


def run(cfg: oracle.OracleConfig, only: list[str] | None = None) -> list[Outcome]:
    outcomes = []
    for it in items(only):
        try:
            status, detail = it.check(cfg)
        except Exception as exc:  # a crash is a failed item, not a crashed run
            status, detail = FAIL, f"{type(exc).__name__}: {exc}"
        outcomes.append(Outcome(it, status, detail))
    return outcomes
