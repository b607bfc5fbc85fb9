"""Numerical ground truth over ``F_p`` using random forms and random points.

Everything here is a rank computation. "Generic" is realised by drawing
coefficients uniformly from ``F_p`` and repeating with independently seeded
trials: dimensions of ideals and ranks of maps can only drop under
specialisation, so the oracle reports the maximum rank and the minimum
dimension seen across trials.

Two routes compute the same ideal dimensions:

* the literal route builds ``I_j`` inside ``S_j`` from products ``m * l^u``
  (``power_ideal_dim``, ``mult_map_rank_direct``);
* the quotient route (used for Hilbert functions and WLP) picks ``r``
  independent forms as new coordinates ``y_i``, so that
  ``A = K[y]/(y_1^{u_1},...,y_r^{u_r}) / (remaining powers)``. The first
  quotient has a monomial basis (exponents below the caps), which keeps the
  matrices much smaller.

The multiplication map by a generic linear form ``ell`` is handled through
``rank(A_j -> A_{j+1}) = dim A_{j+1} - dim (A/ell A)_{j+1}``; after absorbing a
random change of coordinates into the forms we may take ``ell = x_r``, and
``A/x_r A`` is the same kind of algebra in ``r - 1`` variables with the last
coefficient of every form dropped.

Monomials within a degree are listed in graded-lexicographic order
(``x_1^j`` first), so matrices are reproducible for a given seed.
"""

from __future__ import annotations

import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence, TypeVar

import numpy as np

from lefschetz.exactcore import DEFAULT_PRIME, binom, is_prime, rank
from lefschetz.hilbert import AlgebraSpec, HilbertFunction
from lefschetz.surface import expected_h0

MAX_ENTRIES = 50_000_000
_MASK64 = (1 << 64) - 1

T = TypeVar("T")


class OutOfDeskScale(RuntimeError):
    """A matrix would exceed the configured entry budget."""


class InconclusiveError(RuntimeError):
    """The oracle cannot decide, e.g. the algebra is not Artinian."""


@dataclass(frozen=True)
class OracleConfig:
    prime: int = DEFAULT_PRIME
    seed: int = 0
    trials: int = 3
    jobs: int | None = None
    max_entries: int = MAX_ENTRIES

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 2 < self.prime < 1 << 32 or not is_prime(self.prime):
            raise ValueError(f"prime must be an odd prime below 2**32, got {self.prime}")

    @property
    def workers(self) -> int:
        return max(1, self.jobs or os.cpu_count() or 1)


def _rng(cfg: OracleConfig, kind: str, *key: int) -> np.random.Generator:
    entropy = [cfg.seed & _MASK64, zlib.crc32(kind.encode())] + [k & _MASK64 for k in key]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def _over_trials(cfg: OracleConfig, fn: Callable[[int], T]) -> list[T]:
    """Run ``fn(trial)`` for every trial; results come back in trial order."""
    if cfg.workers == 1 or cfg.trials == 1:
        return [fn(k) for k in range(cfg.trials)]
    with ThreadPoolExecutor(max_workers=min(cfg.workers, cfg.trials)) as pool:
        return list(pool.map(fn, range(cfg.trials)))


# ---------------------------------------------------------------------------
# forms and monomial bases


@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if not self.coefficients or not any(self.coefficients):
            raise ValueError("a linear form needs at least one nonzero coefficient")

    @property
    def r(self) -> int:
        return len(self.coefficients)


def _random_vectors(rng: np.random.Generator, count: int, r: int, p: int) -> list[tuple[int, ...]]:
    out = []
    while len(out) < count:
        v = tuple(int(x) for x in rng.integers(0, p, size=r))
        if any(v):
            out.append(v)
    return out


def random_forms(r: int, n: int, cfg: OracleConfig, trial: int = 0) -> list[LinearForm]:
    if r < 1 or n < 1:
        raise ValueError(f"need r, n >= 1, got r={r}, n={n}")
    vecs = _random_vectors(_rng(cfg, "forms", r, n, trial), n, r, cfg.prime)
    return [LinearForm(v) for v in vecs]


def random_points(r: int, n: int, cfg: OracleConfig, trial: int = 0) -> list[tuple[int, ...]]:
    """``n`` random points of ``P^{r-1}`` given by affine representatives."""
    return _random_vectors(_rng(cfg, "points", r, n, trial), n, r, cfg.prime)


def _compositions(j: int, caps: tuple[int, ...]):
    if len(caps) == 1:
        if j < caps[0]:
            yield (j,)
        return
    rest_max = sum(c - 1 for c in caps[1:])
    for a in range(min(j, caps[0] - 1), max(-1, j - rest_max - 1), -1):
        for tail in _compositions(j - a, caps[1:]):
            yield (a,) + tail


class GradedBasis:
    """Exponent vectors of degree ``j`` in ``r`` variables, graded-lex order.

    With ``caps`` given, only vectors with ``a_i < caps[i]`` are listed, which
    is the monomial basis of ``K[y]/(y_1^{caps_1}, ...)`` in degree ``j``.
    """

    def __init__(self, r: int, degree: int, caps: tuple[int, ...] | None = None):
        self.r = r
        self.degree = degree
        self.caps = caps
        bound = caps if caps is not None else (degree + 1,) * r
        if degree < 0:
            vecs: list[tuple[int, ...]] = []
        else:
            vecs = list(_compositions(degree, bound))
        self.exponents = np.array(vecs, dtype=np.int64).reshape(len(vecs), r)
        self._radix = np.array(bound, dtype=np.int64)
        weights = [1] * r
        for i in range(r - 2, -1, -1):
            weights[i] = weights[i + 1] * bound[i + 1]
        if r and weights[0] * bound[0] >= 1 << 62:
            raise OutOfDeskScale(f"monomial codes overflow for r={r}, degree={degree}")
        self._weights = np.array(weights, dtype=np.int64)
        # lex-descending vectors have strictly descending codes
        self._codes_asc = (self.exponents @ self._weights)[::-1].copy()

    def __len__(self) -> int:
        return len(self.exponents)

    def index(self, vectors: np.ndarray) -> np.ndarray:
        """Positions of the given exponent vectors, or -1 where absent."""
        vectors = np.asarray(vectors, dtype=np.int64)
        out = np.full(len(vectors), -1, dtype=np.int64)
        if not len(self) or not len(vectors):
            return out
        ok = np.all((vectors >= 0) & (vectors < self._radix), axis=1)
        codes = vectors @ self._weights
        pos = np.searchsorted(self._codes_asc, codes)
        pos = np.minimum(pos, len(self) - 1)
        ok &= self._codes_asc[pos] == codes
        out[ok] = len(self) - 1 - pos[ok]
        return out


@lru_cache(maxsize=512)
def graded_basis(r: int, j: int, caps: tuple[int, ...] | None = None) -> GradedBasis:
    return GradedBasis(r, j, caps)


# ---------------------------------------------------------------------------
# matrices of power products


def _modp_table(base: int, top: int, p: int) -> np.ndarray:
    vals = [1] * (top + 1)
    for k in range(1, top + 1):
        vals[k] = vals[k - 1] * base % p
    return np.array(vals, dtype=np.uint64)


def _power_weights(coeffs: Sequence[int], u: int, exps: np.ndarray, p: int) -> np.ndarray:
    """Coefficients of ``l^u`` on the monomials ``exps``: multinomial times powers."""
    fact = [1] * (u + 1)
    for k in range(1, u + 1):
        fact[k] = fact[k - 1] * k % p
    inv_fact = np.array([pow(f, -1, p) for f in fact], dtype=np.uint64)
    pu = np.uint64(p)
    w = np.full(len(exps), fact[u], dtype=np.uint64)
    for i, c in enumerate(coeffs):
        col = exps[:, i]
        w = w * inv_fact[col] % pu
        w = w * _modp_table(c % p, u, p)[col] % pu
    return w


def _check_size(rows: int, cols: int, cfg_entries: int) -> None:
    if rows * cols > cfg_entries:
        raise OutOfDeskScale(f"{rows} x {cols} matrix exceeds the {cfg_entries}-entry budget")


def _power_block(coeffs, u: int, j: int, caps, p: int) -> np.ndarray:
    """Rows ``m * l^u`` for every basis monomial ``m`` of degree ``j - u``."""
    r = len(coeffs)
    tgt = graded_basis(r, j, caps)
    src = graded_basis(r, j - u, caps)
    ext = graded_basis(r, u, caps)
    block = np.zeros((len(src), len(tgt)), dtype=np.uint64)
    if not len(src) or not len(ext):
        return block
    w = _power_weights(coeffs, u, ext.exponents, p)
    keep = w != 0
    e, w = ext.exponents[keep], w[keep]
    prod = src.exponents[:, None, :] + e[None, :, :]
    cols = tgt.index(prod.reshape(-1, r)).reshape(len(src), len(e))
    rows = np.broadcast_to(np.arange(len(src))[:, None], cols.shape)
    vals = np.broadcast_to(w[None, :], cols.shape)
    hit = cols >= 0
    block[rows[hit], cols[hit]] = vals[hit]
    return block


def _check_degree(p: int, j: int) -> None:
    if j >= p:
        raise ValueError(f"degree {j} is not below the prime {p}")


def power_ideal_dim(forms: Sequence[LinearForm | Sequence[int]], t, j: int, p: int = DEFAULT_PRIME,
                    max_entries: int = MAX_ENTRIES) -> int:
    """``dim I_j`` for ``I = (l_1^{u_1}, ...)`` built literally inside ``S_j``.

    ``t`` is either a common exponent or one exponent per form.
    """
    if j < 0:
        raise ValueError(f"need j >= 0, got {j}")
    _check_degree(p, j)
    coeffs = [f.coefficients if isinstance(f, LinearForm) else tuple(f) for f in forms]
    exps = [t] * len(coeffs) if isinstance(t, int) else list(t)
    if not coeffs:
        return 0
    r = len(coeffs[0])
    blocks = [_power_block(c, u, j, None, p) for c, u in zip(coeffs, exps) if u <= j]
    if not blocks:
        return 0
    _check_size(sum(len(b) for b in blocks), binom(r - 1 + j, r - 1), max_entries)
    return rank(np.vstack(blocks), p)


def mult_map_rank_direct(forms: Sequence[LinearForm | Sequence[int]], t, j: int,
                         p: int = DEFAULT_PRIME, max_entries: int = MAX_ENTRIES) -> int:
    """Rank of ``x_r: A_j -> A_{j+1}`` as ``dim (I + x_r S)_{j+1} - dim I_{j+1}``, built literally."""
    coeffs = [f.coefficients if isinstance(f, LinearForm) else tuple(f) for f in forms]
    exps = [t] * len(coeffs) if isinstance(t, int) else list(t)
    r = len(coeffs[0])
    _check_degree(p, j + 1)
    blocks = [_power_block(c, u, j + 1, None, p) for c, u in zip(coeffs, exps) if u <= j + 1]
    ell = (0,) * (r - 1) + (1,)
    with_ell = blocks + [_power_block(ell, 1, j + 1, None, p)]
    _check_size(sum(len(b) for b in with_ell), binom(r + j, r - 1), max_entries)
    base = rank(np.vstack(blocks), p) if blocks else 0
    return rank(np.vstack(with_ell), p) - base


# ---------------------------------------------------------------------------
# quotient engine


def _inverse_mod(rows: list[list[int]], p: int) -> list[list[int]]:
    r = len(rows)
    aug = [list(row) + [int(i == k) for k in range(r)] for i, row in enumerate(rows)]
    for c in range(r):
        piv = next(i for i in range(c, r) if aug[i][c] % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [x * inv % p for x in aug[c]]
        for i in range(r):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[c])]
    return [row[r:] for row in aug]


def _independent_subset(vectors: Sequence[tuple[int, ...]], order: Sequence[int], p: int) -> list[int]:
    """Greedy choice (in ``order``) of indices whose vectors are independent mod ``p``."""
    echelon: list[tuple[int, list[int]]] = []
    chosen = []
    for k in order:
        v = [x % p for x in vectors[k]]
        for col, row in echelon:
            if v[col]:
                f = v[col]
                v = [(x - f * y) % p for x, y in zip(v, row)]
        lead = next((i for i, x in enumerate(v) if x), None)
        if lead is None:
            continue
        inv = pow(v[lead], -1, p)
        echelon.append((lead, [x * inv % p for x in v]))
        chosen.append(k)
        if len(chosen) == len(v):
            break
    return chosen


class _Quotient:
    """Dimensions of ``K[x_1..x_r]/(l_k^{u_k})`` degree by degree, cached."""

    def __init__(self, coeffs: Sequence[tuple[int, ...]], exponents: Sequence[int], p: int,
                 max_entries: int):
        self.r = len(coeffs[0]) if coeffs else 0
        self.p = p
        self.max_entries = max_entries
        self._dims: dict[int, int] = {}
        live = [(tuple(c), u) for c, u in zip(coeffs, exponents) if any(x % p for x in c)]
        if self.r == 0:
            self.caps, self.others = (), []
            return
        order = sorted(range(len(live)), key=lambda k: live[k][1])
        chosen = _independent_subset([c for c, _ in live], order, p)
        if len(chosen) < self.r:
            self.caps = None
            self.others = live
            return
        inv = _inverse_mod([list(live[k][0]) for k in chosen], p)
        self.caps = tuple(live[k][1] for k in chosen)
        self.others = []
        for k, (c, u) in enumerate(live):
            if k in chosen:
                continue
            new = tuple(sum(c[a] * inv[a][b] for a in range(self.r)) % p for b in range(self.r))
            self.others.append((new, u))

    @property
    def artinian(self) -> bool:
        return self.caps is not None

    @property
    def top(self) -> int | None:
        """A degree beyond which everything vanishes (None if not Artinian)."""
        if self.caps is None:
            return None
        return sum(u - 1 for u in self.caps)

    def dim(self, j: int) -> int:
        if j < 0:
            return 0
        if self.r == 0:
            return int(j == 0)
        if self.caps is not None and j > self.top:
            return 0
        if j not in self._dims:
            self._dims[j] = self._compute(j)
        return self._dims[j]

    def _compute(self, j: int) -> int:
        _check_degree(self.p, j)
        size = len(graded_basis(self.r, j, self.caps))
        if size == 0:
            return 0
        pending = [(c, u) for c, u in self.others if u <= j]
        if not pending:
            return size
        nrows = sum(len(graded_basis(self.r, j - u, self.caps)) for _, u in pending)
        _check_size(nrows, size, self.max_entries)
        m = np.vstack([_power_block(c, u, j, self.caps, self.p) for c, u in pending])
        return size - rank(m, self.p)

    def hf(self, max_degree: int | None) -> tuple[list[int], bool]:
        """Values up to the first zero (or ``max_degree``) and whether a zero was reached."""
        limit = max_degree if max_degree is not None else self.top
        if limit is None:
            raise InconclusiveError("the algebra is not Artinian; give a maximum degree")
        values = []
        for j in range(limit + 1):
            d = self.dim(j)
            if d == 0:
                return values, True
            values.append(d)
        return values, self.top is not None and limit >= self.top

    def socle_degree(self) -> int:
        if self.top is None:
            raise InconclusiveError("the algebra is not Artinian")
        lo, hi = 0, self.top + 1  # dim(lo) > 0, dim(hi) == 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.dim(mid) > 0:
                lo = mid
            else:
                hi = mid
        return lo


def _trial_quotients(spec: AlgebraSpec, cfg: OracleConfig, trial: int) -> tuple[_Quotient, _Quotient]:
    forms = [f.coefficients for f in random_forms(spec.r, spec.n, cfg, trial)]
    full = _Quotient(forms, spec.exponents, cfg.prime, cfg.max_entries)
    restricted = _Quotient([c[:-1] for c in forms], spec.exponents, cfg.prime, cfg.max_entries)
    return full, restricted


def _min_merge(rows: Sequence[Sequence[int]]) -> list[int]:
    width = max((len(v) for v in rows), default=0)
    return [min(v[j] if j < len(v) else 0 for v in rows) for j in range(width)]


def ideal_dim(spec: AlgebraSpec, cfg: OracleConfig, j: int) -> int:
    """``dim I_j`` via the literal route, maximised over trials."""
    def one(trial: int) -> int:
        forms = random_forms(spec.r, spec.n, cfg, trial)
        return power_ideal_dim(forms, spec.exponents, j, cfg.prime, cfg.max_entries)

    return max(_over_trials(cfg, one))


def algebra_hf(spec: AlgebraSpec, cfg: OracleConfig, max_degree: int | None = None) -> HilbertFunction:
    """Hilbert function of the algebra, minimised degree-wise over trials.

    Without ``max_degree`` the algebra must be Artinian. With it, values stop at
    ``max_degree`` and ``complete`` records whether a zero degree was reached.
    """
    if max_degree is not None and max_degree < 0:
        raise ValueError(f"max_degree must be >= 0, got {max_degree}")

    def one(trial: int):
        q = _Quotient([f.coefficients for f in random_forms(spec.r, spec.n, cfg, trial)],
                      spec.exponents, cfg.prime, cfg.max_entries)
        return q.hf(max_degree)

    results = _over_trials(cfg, one)
    return HilbertFunction(tuple(_min_merge([v for v, _ in results])), "oracle", spec,
                           any(done for _, done in results))


def mult_map_rank(spec: AlgebraSpec, cfg: OracleConfig, j: int) -> int:
    """Rank of multiplication by a generic linear form ``A_j -> A_{j+1}``, maximised over trials."""
    if j < 0:
        raise ValueError(f"need j >= 0, got {j}")

    def one(trial: int) -> int:
        full, restricted = _trial_quotients(spec, cfg, trial)
        return full.dim(j + 1) - restricted.dim(j + 1)

    return max(_over_trials(cfg, one))


@dataclass(frozen=True)
class DegreeMap:
    """Multiplication by a generic linear form from degree ``j`` to ``j+1``."""

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

    @property
    def kernel(self) -> int:
        return self.dim_source - self.rank

    @property
    def cokernel(self) -> int:
        return self.dim_target - self.rank


@dataclass(frozen=True)
class OracleReport:
    spec: AlgebraSpec
    hf: HilbertFunction
    maps: tuple[DegreeMap, ...]

    @property
    def wlp(self) -> bool:
        return all(m.full_rank for m in self.maps)

    @property
    def failures(self) -> tuple[int, ...]:
        return tuple(m.j for m in self.maps if not m.full_rank)

    def at(self, j: int) -> DegreeMap:
        for m in self.maps:
            if m.j == j:
                return m
        return DegreeMap(j, self.hf[j], self.hf[j + 1], 0)


def wlp_verdict(spec: AlgebraSpec, cfg: OracleConfig) -> OracleReport:
    """Ranks of the generic multiplication map in every degree of an Artinian algebra."""

    def one(trial: int):
        full, restricted = _trial_quotients(spec, cfg, trial)
        if not full.artinian:
            raise InconclusiveError(f"{spec.label()} is not Artinian (fewer than r independent forms)")
        values, _ = full.hf(None)
        ranks = [full.dim(j + 1) - restricted.dim(j + 1) for j in range(len(values))]
        return values, ranks

    results = _over_trials(cfg, one)
    dims = _min_merge([v for v, _ in results])
    width = max(len(rk) for _, rk in results)
    ranks = [max(rk[j] if j < len(rk) else 0 for _, rk in results) for j in range(width)]
    hf = HilbertFunction(tuple(dims), "oracle", spec, True)
    maps = tuple(DegreeMap(j, hf[j], hf[j + 1], min(ranks[j] if j < width else 0, hf[j], hf[j + 1]))
                 for j in range(len(hf)))
    return OracleReport(spec, hf, maps)


def socle_degree_oracle(spec: AlgebraSpec, cfg: OracleConfig) -> int:
    """Top nonzero degree, found by bisection; the minimum over trials."""

    def one(trial: int) -> int:
        q = _Quotient([f.coefficients for f in random_forms(spec.r, spec.n, cfg, trial)],
                      spec.exponents, cfg.prime, cfg.max_entries)
        return q.socle_degree()

    return min(_over_trials(cfg, one))


# ---------------------------------------------------------------------------
# fat points


def fatpoint_matrix(points: Sequence[Sequence[int]], j: int, mults: Sequence[int], p: int) -> np.ndarray:
    """Vanishing conditions for degree-``j`` forms: one row per derivative
    ``d^alpha``, ``|alpha| = m_i - 1``, evaluated at point ``i``."""
    r = len(points[0])
    cols = graded_basis(r, j)
    beta = cols.exponents
    pu = np.uint64(p)
    # falling factorials b (b-1) ... (b-a+1) mod p
    ff = np.zeros((j + 1, j + 1), dtype=np.uint64)
    for b in range(j + 1):
        acc = 1
        for a in range(b + 1):
            ff[b, a] = acc
            acc = acc * (b - a) % p
    blocks = []
    for pt, m in zip(points, mults):
        if m <= 0:
            continue
        if m - 1 > j:
            blocks.append(_dense_identity_rows(len(cols)))
            continue
        alpha = graded_basis(r, m - 1).exponents
        diff = beta[None, :, :] - alpha[:, None, :]
        ok = np.all(diff >= 0, axis=2)
        vals = np.ones(ok.shape, dtype=np.uint64)
        for i in range(r):
            powers = _modp_table(pt[i] % p, j, p)
            d = np.clip(diff[:, :, i], 0, None)
            vals = vals * ff[beta[None, :, i], alpha[:, None, i]] % pu
            vals = vals * powers[d] % pu
        vals[~ok] = 0
        blocks.append(vals)
    if not blocks:
        return np.zeros((0, len(cols)), dtype=np.uint64)
    return np.vstack(blocks)


def _dense_identity_rows(size: int) -> np.ndarray:
    # order of vanishing above the degree kills every form
    return np.eye(size, dtype=np.uint64)


def fatpoint_h0h1(r: int, j: int, mults: Sequence[int], cfg: OracleConfig) -> tuple[int, int]:
    """``(h^0, h^1)`` of degree-``j`` forms on ``P^{r-1}`` vanishing to order ``m_i`` at random points.

    ``h^0`` is minimised over trials; trials stop early once it reaches the
    floor ``max(0, expected)``.
    """
    if r < 1 or j < 0:
        raise ValueError(f"need r >= 1 and j >= 0, got r={r}, j={j}")
    if any(m < 0 for m in mults):
        raise ValueError(f"multiplicities must be nonnegative: {tuple(mults)}")
    _check_degree(cfg.prime, j)
    expected = expected_h0(r, j, mults)
    ncols = binom(r - 1 + j, r - 1)
    nrows = sum(binom(r - 2 + m, r - 1) if m - 1 <= j else ncols for m in mults if m > 0)
    _check_size(nrows, ncols, cfg.max_entries)
    floor = max(0, expected)
    best = None
    for trial in range(cfg.trials):
        pts = random_points(r, len(mults), cfg, trial)
        m = fatpoint_matrix(pts, j, mults, cfg.prime)
        h0 = ncols - (rank(m, cfg.prime) if len(m) else 0)
        best = h0 if best is None else min(best, h0)
        if best == floor:
            break
    return best, best - expected
