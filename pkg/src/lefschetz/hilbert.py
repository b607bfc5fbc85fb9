"""Closed-form Hilbert functions and socle data for quotients by powers of
generic linear forms.

Notation follows the usual families: with ``n`` generic ``t``-th powers in
``r`` variables, ``A_{r,t}`` has ``n = r+1``, ``B_{r,t}`` has ``n = r+2`` and
``C_{r,t}`` (a complete intersection) has ``n = r``. All formulas here are for
uniform exponents; anything else is left to the oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Literal, Sequence

from lefschetz.exactcore import binom, eulerian

Provenance = Literal["formula", "oracle"]


class PrecisionError(ArithmeticError):
    """A floating-point evaluation did not land close enough to an integer."""


@dataclass(frozen=True)
class AlgebraSpec:
    """``K[x_1..x_r] / (l_1^{u_1}, ..., l_n^{u_n})`` with generic ``l_i``."""

    r: int
    n: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.r < 1 or self.n < 1:
            raise ValueError(f"need r >= 1 and n >= 1, got r={self.r}, n={self.n}")
        object.__setattr__(self, "exponents", tuple(int(u) for u in self.exponents))
        if len(self.exponents) != self.n:
            raise ValueError(f"{len(self.exponents)} exponents given for n={self.n} forms")
        if any(u < 1 for u in self.exponents):
            raise ValueError(f"exponents must be positive: {self.exponents}")

    @classmethod
    def uniform(cls, r: int, n: int, t: int) -> "AlgebraSpec":
        return cls(r, n, (t,) * n)

    @property
    def t(self) -> int | None:
        """The common exponent, or None when the exponents differ."""
        first = self.exponents[0]
        return first if all(u == first for u in self.exponents) else None

    @property
    def family(self) -> str:
        if self.n == self.r + 1:
            return "A"
        if self.n == self.r + 2:
            return "B"
        if self.n == self.r:
            return "C"
        return "general"

    def label(self) -> str:
        if self.t is not None:
            return f"r={self.r} n={self.n} t={self.t}"
        return f"r={self.r} n={self.n} u={','.join(map(str, self.exponents))}"


@dataclass(frozen=True)
class HilbertFunction:
    """Degree-indexed dimensions, stored without trailing zeros.

    Indexing past the stored range returns 0. ``complete`` is False when the
    values were cut off at a requested maximum degree before reaching zero.
    """

    values: tuple[int, ...]
    provenance: Provenance = "formula"
    spec: AlgebraSpec | None = field(default=None, compare=False)
    complete: bool = True

    def __post_init__(self):
        vals = list(self.values)
        while vals and vals[-1] == 0:
            vals.pop()
        object.__setattr__(self, "values", tuple(int(v) for v in vals))

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.values):
            return self.values[j]
        return 0

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def window(self, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(self[j] for j in range(lo, hi + 1))

    @property
    def socle_degree(self) -> int:
        return socle_degree(self)


def _stanley_raw(r: int, t: int, i: int) -> int:
    m = min(i // t, r)
    total = binom(r - 1 + i, r - 1)
    for j in range(1, m + 1):
        total += (-1) ** j * binom(r - 1 + i - t * j, r - 1) * binom(r + 1, j)
    return total


@lru_cache(maxsize=None)
def _stanley_first_zero(r: int, t: int) -> int:
    # the algebra is standard graded, so it vanishes from the first
    # nonpositive coefficient on; r(t-1)+1 is always past the end
    for i in range(r * (t - 1) + 1):
        if _stanley_raw(r, t, i) <= 0:
            return i
    return r * (t - 1) + 1


def stanley_hf(r: int, t: int, i: int) -> int:
    """``dim (A_{r,t})_i`` for ``r+1`` generic ``t``-th powers in ``r`` variables.

    The inclusion-exclusion sum is cut off at its first nonpositive value.
    """
    if r < 1 or t < 1 or i < 0:
        raise ValueError(f"need r, t >= 1 and i >= 0, got {(r, t, i)}")
    if i >= _stanley_first_zero(r, t):
        return 0
    return _stanley_raw(r, t, i)


def stanley_hilbert_function(r: int, t: int) -> HilbertFunction:
    top = r * (t - 1)
    return HilbertFunction(
        tuple(stanley_hf(r, t, i) for i in range(top + 1)),
        "formula",
        AlgebraSpec.uniform(r, r + 1, t),
    )


def ci_hf(r: int, t: int) -> HilbertFunction:
    """Hilbert function of ``C_{r,t}``: coefficients of ``((1 - z^t)/(1 - z))^r``."""
    if r < 1 or t < 1:
        raise ValueError(f"need r, t >= 1, got {(r, t)}")
    coeffs = [1]
    for _ in range(r):
        nxt = [0] * (len(coeffs) + t - 1)
        for a, c in enumerate(coeffs):
            for b in range(t):
                nxt[a + b] += c
        coeffs = nxt
    return HilbertFunction(tuple(coeffs), "formula", AlgebraSpec.uniform(r, r, t))


def dvl_hf(t: int, m: int) -> int:
    """``dim A_m`` for five generic ``t``-th powers in four variables.

    Only certified in the window ``t <= m <= 2t - 2`` where the fat-point
    system on ``P^3`` is non-special.
    """
    if not t <= m <= 2 * t - 2:
        raise ValueError(f"degree {m} outside the certified window [{t}, {2 * t - 2}]")
    return binom(m + 3, 3) - 5 * binom(m - t + 3, 3)


def _verlinde_terms(s: int, t: int):
    for j in range(t):
        sign = -1 if (s * j) % 2 else 1
        yield sign, (2 * j + 1) / (2 * t)


def verlinde_dim(s: int, t: int, tol: float = 1e-6) -> int:
    """``dim (B_{s,t})`` in the middle degree ``s(t-1)/2`` via the Verlinde sum.

    Evaluated with ``math.fsum`` first; if the result is not within ``tol``
    of an integer it is recomputed with mpmath at 60 digits before giving up.
    """
    if s < 1 or t < 2:
        raise ValueError(f"need s >= 1 and t >= 2, got {(s, t)}")
    if (s * (t - 1)) % 2:
        raise ValueError(f"middle degree s(t-1)/2 is not an integer for s={s}, t={t}")
    value = math.fsum(sign * math.sin(frac * math.pi) ** (-s) for sign, frac in _verlinde_terms(s, t)) / t
    nearest = round(value)
    if abs(value - nearest) <= tol:
        return int(nearest)

    import mpmath

    with mpmath.workdps(60):
        exact = mpmath.fsum(sign * mpmath.sin(frac * mpmath.pi) ** (-s) for sign, frac in _verlinde_terms(s, t)) / t
        nearest = int(mpmath.nint(exact))
        if abs(exact - nearest) > tol:
            raise PrecisionError(f"Verlinde sum for s={s}, t={t} evaluates to {exact}")
    return nearest


def decruz_closed_form(s: int) -> int:
    """``dim (B_{s,2})_{ceil(s/2)}``: ``2^(s/2)`` for even ``s``, 1 for odd."""
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    return 2 ** (s // 2) if s % 2 == 0 else 1


def socle_degree(hf: HilbertFunction | Sequence[int]) -> int:
    """Largest degree with a nonzero value; -1 for the zero algebra."""
    values = hf.values if isinstance(hf, HilbertFunction) else tuple(hf)
    for j in range(len(values) - 1, -1, -1):
        if values[j] > 0:
            return j
    return -1


def socle_b_odd(s: int, t: int) -> int:
    """Socle degree of ``B_{s,t}`` for odd ``s``: ``(t-1)(s+1)/2``."""
    if s % 2 == 0:
        raise ValueError(f"s must be odd, got {s}")
    return (t - 1) * (s + 1) // 2


def dci_socle_bounds(k: int, t: int) -> tuple[int, int]:
    """Lower and upper bounds ``((t-1)k, (t-1)(k+1))`` for the socle degree of ``B_{2k,t}``."""
    return (t - 1) * k, (t - 1) * (k + 1)


def failr1_margin(k: int, t: int) -> int:
    """``dim (A_{2k,t})_c - dim (A_{2k,t})_{c+1}`` at ``c = k(t-1) - 1``.

    A nonnegative margin together with the nonzero cokernel ``(B_{2k-1,t})_{c+1}``
    forces the map ``A_c -> A_{c+1}`` to be neither injective nor surjective.
    """
    c = k * (t - 1) - 1
    return stanley_hf(2 * k, t, c) - stanley_hf(2 * k, t, c + 1)


def eulerian_alpha(k: int) -> int:
    """Leading coefficient (times ``(2k-2)!``) of the even-``r`` failure margin in ``t``."""
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    return eulerian(2 * k - 2, k - 2) - eulerian(2 * k - 2, k - 3)


def gtodd_margin(k: int, t: int) -> int:
    """``dim (A_{2k+1,t})_c - dim (A_{2k+1,t})_{c+1}`` at ``c = (t-1)(k+1) - 1``; needs ``t > 2k+2``."""
    if t <= 2 * k + 2:
        raise ValueError(f"need t > 2k+2, got k={k}, t={t}")
    c = (t - 1) * (k + 1) - 1
    return stanley_hf(2 * k + 1, t, c) - stanley_hf(2 * k + 1, t, c + 1)
