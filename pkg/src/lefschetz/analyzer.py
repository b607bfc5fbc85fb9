"""Symbolic WLP classifiers and the harness that checks them against the oracle.

Each classifier returns a ``Verdict``: Holds, Fails (with the degree ``j`` of
the offending map ``A_j -> A_{j+1}``) or Unknown, together with the result
identifiers it relies on. ``cross_check`` runs every classifier that applies
to a spec, runs the oracle, and flags any contradiction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from lefschetz.exactcore import binom
from lefschetz.hilbert import (
    AlgebraSpec,
    HilbertFunction,
    failr1_margin,
    socle_b_odd,
    stanley_hf,
    verlinde_dim,
)
from lefschetz.oracle import (
    DegreeMap,
    InconclusiveError,
    OracleConfig,
    OutOfDeskScale,
    socle_degree_oracle,
    wlp_verdict,
)
from lefschetz.surface import five_thirds_degree, injectivity_bound

SCHEMA_VERSION = 1

# (r, t, n) where A_t -> A_{t+1} drops rank
EXCEPTIONAL_TRIPLES = frozenset({(4, 3, 5), (5, 3, 9), (6, 3, 14), (6, 2, 7)})

# (ambient dimension, degree, number of points) where general double points
# fail to impose independent conditions, apart from the quadric family
_DOUBLE_POINT_EXCEPTIONS = frozenset({(2, 4, 5), (3, 4, 9), (4, 4, 14), (4, 3, 7)})


class TriState(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Verdict:
    state: TriState
    degree: int | None = None
    cause: str = ""
    citations: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "citations", tuple(self.citations))
        if self.state is TriState.FAILS and self.degree is None:
            raise ValueError("a failing verdict needs a witnessing degree")

    @classmethod
    def holds(cls, cause: str = "", citations=()) -> "Verdict":
        return cls(TriState.HOLDS, None, cause, tuple(citations))

    @classmethod
    def fails(cls, degree: int, cause: str = "", citations=()) -> "Verdict":
        return cls(TriState.FAILS, degree, cause, tuple(citations))

    @classmethod
    def unknown(cls, cause: str = "", citations=()) -> "Verdict":
        return cls(TriState.UNKNOWN, None, cause, tuple(citations))

    def __str__(self) -> str:
        if self.state is TriState.FAILS:
            return f"Fails at degree {self.degree}"
        return str(self.state)

    def to_dict(self) -> dict:
        return {
            "state": self.state.value,
            "degree": self.degree,
            "cause": self.cause,
            "citations": list(self.citations),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(TriState(d["state"]), d["degree"], d["cause"], tuple(d["citations"]))


# ---------------------------------------------------------------------------
# peak of the Hilbert function


def double_points_h0(dim: int, d: int, n: int) -> int:
    """``h^0`` of degree-``d`` forms on ``P^dim`` singular at ``n`` general points."""
    if dim < 0:
        return 0
    if dim == 0:
        return int(n == 0 and d >= 0)
    if (dim, d, n) in _DOUBLE_POINT_EXCEPTIONS:
        return 1
    if d == 2 and 2 <= n <= dim:
        # quadrics singular along the span of the points
        return binom(dim + 2 - n, 2)
    return max(0, binom(dim + d, dim) - n * (dim + 1))


@dataclass(frozen=True)
class MapStatus:
    j: int
    dim_source: int
    dim_target: int
    rank: int

    @property
    def injective(self) -> bool:
        return self.rank == self.dim_source

    @property
    def surjective(self) -> bool:
        return self.rank == self.dim_target

    @property
    def full_rank(self) -> bool:
        return self.injective or self.surjective


@dataclass(frozen=True)
class PeakStatus:
    """The maps ``A_{t-1} -> A_t`` and ``A_t -> A_{t+1}`` for ``n`` generic ``t``-th powers."""

    r: int
    t: int
    n: int
    lower: MapStatus | None
    upper: MapStatus | None
    citations: tuple[str, ...] = ()

    @property
    def known(self) -> bool:
        return self.lower is not None

    @property
    def twin_peaks(self) -> bool:
        return self.n == binom(self.r - 2 + self.t, self.r - 2)

    @property
    def exceptional(self) -> bool:
        return (self.r, self.t, self.n) in EXCEPTIONAL_TRIPLES


def classify_peak(r: int, t: int, n: int) -> PeakStatus:
    """Ranks at the peak from the inverse-system dictionary.

    ``A_j = S_j`` below ``t``; ``A_t`` loses the ``n`` independent powers;
    ``A_{t+1}`` is dual to double points in ``P^{r-1}``, and the rank of each
    map is ``dim A_{j+1}`` minus the same count on a general hyperplane
    (``r - 1`` variables). Double points are handled by the classical
    interpolation theorem with its four sporadic exceptions.
    """
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    if t < 1 or n < 1:
        raise ValueError(f"need t, n >= 1, got t={t}, n={n}")
    cites = ("Prop 3.2", "Cor 3.3")
    if n < r:
        return PeakStatus(r, t, n, None, None, cites)
    big_n = binom(r - 2 + t, r - 2)
    dim_below = binom(r - 2 + t, r - 1)
    dim_peak = max(0, binom(r - 1 + t, r - 1) - n)
    restricted_peak = max(0, big_n - n)
    lower = MapStatus(t - 1, dim_below, dim_peak, dim_peak - restricted_peak)
    dim_above = double_points_h0(r - 1, t + 1, n)
    restricted_above = double_points_h0(r - 2, t + 1, n)
    upper = MapStatus(t, dim_peak, dim_above, dim_above - restricted_above)
    if (r, t, n) == (4, 3, 5):
        cites = ("Example 1.1",) + cites
    return PeakStatus(r, t, n, lower, upper, cites)


def _peak_verdict(spec: AlgebraSpec) -> Verdict:
    r, n, t = spec.r, spec.n, spec.t
    peak = classify_peak(r, t, n)
    if not peak.known:
        return Verdict.unknown("not Artinian")
    if not peak.upper.full_rank:
        return Verdict.fails(t, "A_t -> A_{t+1} drops rank at an exceptional triple", peak.citations)
    if not peak.lower.full_rank:
        return Verdict.fails(t - 1, "A_{t-1} -> A_t drops rank", peak.citations)
    if n >= binom(r - 2 + t, r - 2):
        # surjective from degree t-1 on, and A_j = S_j below t
        return Verdict.holds("surjective from the peak on", peak.citations)
    return Verdict.unknown("peak maps have full rank; higher degrees undecided", peak.citations)


# ---------------------------------------------------------------------------
# four variables


_R4_TABLE = {5: 3, 6: 27, 7: 140, 8: 704}


def r4_margin(n: int, t: int, m: int) -> int:
    """``dim A_m - dim A_{m-1}`` for ``n`` generic ``t``-th powers in four variables,
    assuming the fat-point systems in degrees ``m-1`` and ``m`` are non-special."""
    return binom(m + 3, 3) - n * binom(m - t + 3, 3) - binom(m + 2, 3) + n * binom(m - t + 2, 3)


def r4_failure_degree(n: int, t: int) -> int:
    """``m`` such that ``A_{m-1} -> A_m`` is the first map with a kernel."""
    if n in (5, 6):
        return five_thirds_degree(t)
    return injectivity_bound(n, t)


def r4_formula_threshold(n: int, search: int = 5000) -> int:
    """Smallest ``T`` with ``r4_margin >= 0`` for every ``T <= t <= search``."""
    if n not in _R4_TABLE:
        raise ValueError(f"n must be in 5..8, got {n}")
    last_bad = 2
    for t in range(3, search + 1):
        if r4_margin(n, t, r4_failure_degree(n, t)) < 0:
            last_bad = t
    return last_bad + 1


def r4_threshold(n: int) -> Callable[[int], Verdict]:
    """Verdict as a function of ``t`` for ``n`` generic ``t``-th powers in four variables."""
    if n not in _R4_TABLE:
        raise ValueError(f"n must be in 5..8, got {n}")
    start = _R4_TABLE[n]
    cites = {5: ("Lemma 4.7", "Thm 4.9"), 6: ("Lemma 4.8", "Thm 4.9")}.get(n, ("Thm 4.9",))

    def verdict(t: int) -> Verdict:
        if t < 1:
            raise ValueError(f"need t >= 1, got {t}")
        if n == 6 and (t <= 14 or t == 26):
            return Verdict.holds("checked degree by degree", cites)
        if t >= start or (n == 6 and t == 15):
            m = r4_failure_degree(n, t)
            return Verdict.fails(m - 1, f"kernel from h^1(D'_{m}) > 0 with dim A_{m} >= rank", cites)
        return Verdict.unknown("outside the proven bands", cites)

    return verdict


# ---------------------------------------------------------------------------
# almost complete intersections


@dataclass(frozen=True)
class EvenFailure:
    degree: int
    margin: int
    verdict: Verdict


def even_aci_failure(r: int, t: int) -> EvenFailure:
    """Failure test for ``r+1`` generic ``t``-th powers in ``r = 2k`` variables at ``c = k(t-1)-1``.

    The cokernel of ``A_c -> A_{c+1}`` is ``(B_{2k-1,t})_{c+1}``, nonzero
    because the socle of ``B_{2k-1,t}`` sits exactly in degree ``c+1``; a
    nonnegative margin ``dim A_c - dim A_{c+1}`` then rules out injectivity too.
    """
    if r % 2:
        raise ValueError(f"r must be even, got {r}")
    k = r // 2
    if k < 2:
        raise ValueError(f"need r >= 4, got {r}")
    if t < 2:
        raise ValueError(f"need t >= 2, got {t}")
    c = k * (t - 1) - 1
    margin = failr1_margin(k, t)
    cites = ("Thm 5.3",)
    obstructed = socle_b_odd(2 * k - 1, t) == c + 1 and c + 1 > 0
    if margin >= 0 and obstructed:
        v = Verdict.fails(c, f"dim A_c - dim A_(c+1) = {margin} >= 0 and nonzero cokernel", cites)
    else:
        v = Verdict.unknown(f"margin {margin} < 0", cites)
    return EvenFailure(c, margin, v)


def _half_integer(l) -> Fraction:
    value = Fraction(l)
    if (2 * value).denominator != 1:
        raise ValueError(f"2l must be an integer, got l={l}")
    return value


def odd_aci_check(k: int, l, cfg: OracleConfig | None = None,
                  socle_b: int | None = None) -> Verdict:
    """WLP test for ``A_{2k+1,t}`` with ``t = 2l+1``.

    Case (a) uses the Verlinde count of ``B_{2k,t}`` in degree ``k(t-1)``.
    Case (b) needs the socle degree of ``B_{2k,t}``: pass it as ``socle_b`` or
    supply ``cfg`` to let the oracle find it.
    """
    l = _half_integer(l)
    t = int(2 * l + 1)
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if t < 2:
        raise ValueError(f"need t = 2l+1 >= 2, got l={l}")
    r = 2 * k + 1
    c = k * (t - 1) - 1
    lhs = stanley_hf(r, t, c) + verlinde_dim(2 * k, t)
    rhs = stanley_hf(r, t, c + 1)
    if lhs > rhs:
        return Verdict.fails(c, f"case (a): {lhs} > {rhs}", ("Prop 5.8",))
    if t > 2 * k + 2:
        c_b = (t - 1) * (k + 1) - 1
        if socle_b is None and cfg is not None:
            try:
                socle_b = socle_degree_oracle(AlgebraSpec.uniform(2 * k, 2 * k + 2, t), cfg)
            except (OutOfDeskScale, InconclusiveError):
                socle_b = None
        if socle_b is not None and socle_b == c_b + 1:
            return Verdict.fails(c_b, "case (b): socle of B in degree c+1", ("Prop 5.8", "Lemma 5.7"))
    return Verdict.unknown(f"case (a) margin {lhs - rhs} <= 0", ("Prop 5.8",))


@dataclass(frozen=True)
class SquaresRow:
    r: int
    k: int
    margin_a: int
    margin_b: int | None
    verdict: Verdict


def squares_scan(r_max: int) -> list[SquaresRow]:
    """Margins of the even and odd failure criteria for squares (``t = 2``), ``2 <= r <= r_max``."""
    if r_max > 64:
        raise ValueError(f"r_max must be <= 64, got {r_max}")
    rows = []
    for r in range(2, r_max + 1):
        k = r // 2
        margin_a = stanley_hf(r, 2, k - 1) - stanley_hf(r, 2, k)
        if r % 2 == 0:
            margin_b = None
            if k >= 2 and margin_a >= 0:
                v = Verdict.fails(k - 1, f"margin {margin_a} >= 0", ("Thm 5.3", "Example 5.10"))
            else:
                v = Verdict.unknown(f"margin {margin_a}")
        else:
            margin_b = margin_a + 2 ** k
            if margin_b > 0:
                v = Verdict.fails(k - 1, f"margin {margin_b} > 0", ("Prop 5.8", "Example 5.10"))
            else:
                v = Verdict.unknown(f"margin {margin_b}")
        rows.append(SquaresRow(r, k, margin_a, margin_b, v))
    return rows


# ---------------------------------------------------------------------------
# reports and the cross-check harness


@dataclass
class WlpReport:
    spec: AlgebraSpec
    entries: tuple[DegreeMap, ...]
    symbolic: Verdict
    oracle: Verdict
    citations: tuple[str, ...] = ()
    agreement: bool = True
    diagnostics: tuple[str, ...] = ()
    hf: HilbertFunction | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "spec": {"r": self.spec.r, "n": self.spec.n, "exponents": list(self.spec.exponents)},
            "entries": [
                {
                    "j": e.j,
                    "dim_source": e.dim_source,
                    "dim_target": e.dim_target,
                    "rank": e.rank,
                    "injective": e.injective,
                    "surjective": e.surjective,
                }
                for e in self.entries
            ],
            "symbolic": self.symbolic.to_dict(),
            "oracle": self.oracle.to_dict(),
            "citations": list(self.citations),
            "agreement": self.agreement,
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WlpReport":
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        s = d["spec"]
        spec = AlgebraSpec(s["r"], s["n"], tuple(s["exponents"]))
        entries = tuple(DegreeMap(e["j"], e["dim_source"], e["dim_target"], e["rank"]) for e in d["entries"])
        return cls(spec, entries, Verdict.from_dict(d["symbolic"]), Verdict.from_dict(d["oracle"]),
                   tuple(d["citations"]), d["agreement"], tuple(d["diagnostics"]))


def symbolic_verdicts(spec: AlgebraSpec, cfg: OracleConfig | None = None) -> list[Verdict]:
    """Every classifier that applies to ``spec``, in a fixed order."""
    r, n, t = spec.r, spec.n, spec.t
    out: list[Verdict] = []
    if n < r:
        return out
    if r <= 2:
        out.append(Verdict.holds("at most two variables", ("Intro r<=2",)))
    elif r == 3:
        out.append(Verdict.holds("three variables, powers of linear forms", ("Intro r=3",)))
    if n == r:
        out.append(Verdict.holds("complete intersection of powers", ("Intro complete intersection",)))
    if t is None or r < 3:
        return out
    out.append(_peak_verdict(spec))
    if r == 4 and n in _R4_TABLE:
        out.append(r4_threshold(n)(t))
    if n == r + 1 and t >= 2:
        if r % 2 == 0:
            out.append(even_aci_failure(r, t).verdict)
        else:
            out.append(odd_aci_check((r - 1) // 2, Fraction(t - 1, 2), cfg))
    return out


def _merge(verdicts: list[Verdict]) -> tuple[Verdict, list[str]]:
    notes = []
    fails = [v for v in verdicts if v.state is TriState.FAILS]
    holds = [v for v in verdicts if v.state is TriState.HOLDS]
    if fails and holds:
        notes.append("symbolic classifiers contradict each other: "
                     + "; ".join(f"{v} [{', '.join(v.citations)}]" for v in fails + holds))
    if fails:
        degree = min(v.degree for v in fails)
        cites = _union(v.citations for v in fails)
        causes = "; ".join(v.cause for v in fails if v.cause)
        return Verdict.fails(degree, causes, cites), notes
    if holds:
        return Verdict.holds("; ".join(v.cause for v in holds if v.cause), _union(v.citations for v in holds)), notes
    return Verdict.unknown("no classifier decides", _union(v.citations for v in verdicts)), notes


def _union(groups) -> tuple[str, ...]:
    seen: list[str] = []
    for g in groups:
        for c in g:
            if c not in seen:
                seen.append(c)
    return tuple(seen)


def cross_check(spec: AlgebraSpec, cfg: OracleConfig) -> WlpReport:
    verdicts = symbolic_verdicts(spec, cfg)
    symbolic, notes = _merge(verdicts)
    entries: tuple[DegreeMap, ...] = ()
    hf = None
    try:
        report = wlp_verdict(spec, cfg)
        entries, hf = report.maps, report.hf
        if report.wlp:
            oracle = Verdict.holds("every degree has full rank")
        else:
            bad = report.failures
            oracle = Verdict.fails(bad[0], "rank deficient in degrees " + ",".join(map(str, bad)))
    except (OutOfDeskScale, InconclusiveError) as exc:
        oracle = Verdict.unknown(str(exc))
        notes.append(f"oracle unavailable: {exc}")

    agree = not any(n.startswith("symbolic classifiers contradict") for n in notes)
    if entries:
        by_degree = {e.j: e for e in entries}
        for v in verdicts:
            if v.state is TriState.FAILS:
                e = by_degree.get(v.degree)
                if e is None or e.full_rank:
                    agree = False
                    notes.append(f"{v} [{', '.join(v.citations)}] but the oracle map in degree "
                                 f"{v.degree} has full rank")
            elif v.state is TriState.HOLDS and oracle.state is TriState.FAILS:
                agree = False
                notes.append(f"Holds [{', '.join(v.citations)}] but the oracle finds rank deficiency "
                             f"in degree {oracle.degree}")
    return WlpReport(spec, entries, symbolic, oracle, symbolic.citations, agree, tuple(notes), hf)
