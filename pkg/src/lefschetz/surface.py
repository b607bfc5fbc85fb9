"""Divisor classes on the blowup of P^2 at up to eight general points.

A class is ``d*E0 - sum(b_i * E_i)`` with ``E0^2 = 1``, ``E_i^2 = -1`` and all
mixed products zero. The (-1)-curves are listed explicitly (there are at most
240), which makes irregularity of uniform classes a finite minimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from lefschetz.exactcore import binom


@dataclass(frozen=True)
class DivisorClass:
    d: int
    b: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if not 1 <= len(self.b) <= 8:
            raise ValueError(f"blowups of 1..8 points only, got {len(self.b)}")

    @property
    def n(self) -> int:
        return len(self.b)

    @classmethod
    def uniform(cls, n: int, d: int, m: int) -> "DivisorClass":
        return cls(d, (m,) * n)

    @classmethod
    def hyperplane(cls, n: int) -> "DivisorClass":
        return cls(1, (0,) * n)

    @classmethod
    def canonical(cls, n: int) -> "DivisorClass":
        return cls(-3, (-1,) * n)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same_n(self, other)
        return DivisorClass(self.d + other.d, tuple(x + y for x, y in zip(self.b, other.b)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same_n(self, other)
        return DivisorClass(self.d - other.d, tuple(x - y for x, y in zip(self.b, other.b)))

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.d, tuple(k * x for x in self.b))

    def self_intersection(self) -> int:
        return intersect(self, self)

    def __str__(self) -> str:
        terms = [f"{self.d}E0"]
        for i, x in enumerate(self.b, 1):
            if x:
                terms.append(f"{'-' if x > 0 else '+'}{abs(x) if abs(x) != 1 else ''}E{i}")
        return "".join(terms)


def _check_same_n(a: DivisorClass, b: DivisorClass) -> None:
    if a.n != b.n:
        raise ValueError(f"classes live on different blowups (n={a.n} vs n={b.n})")


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    _check_same_n(a, b)
    return a.d * b.d - sum(x * y for x, y in zip(a.b, b.b))


# multiplicity patterns of (-1)-curves on the blowup at 8 points, by degree
_CURVE_PATTERNS = {
    0: (-1, 0, 0, 0, 0, 0, 0, 0),
    1: (0, 0, 0, 0, 0, 0, 1, 1),
    2: (0, 0, 0, 1, 1, 1, 1, 1),
    3: (0, 1, 1, 1, 1, 1, 1, 2),
    4: (1, 1, 1, 1, 1, 2, 2, 2),
    5: (1, 1, 2, 2, 2, 2, 2, 2),
    6: (2, 2, 2, 2, 2, 2, 2, 3),
}


@lru_cache(maxsize=None)
def minus_one_curves(n: int) -> tuple[DivisorClass, ...]:
    """All (-1)-curves on the blowup of P^2 at ``n`` general points, ``1 <= n <= 8``."""
    if not 1 <= n <= 8:
        raise ValueError(f"n must be in 1..8, got {n}")
    curves = []
    for d, pattern in _CURVE_PATTERNS.items():
        for perm in sorted(set(itertools.permutations(pattern)), reverse=True):
            if any(perm[n:]):
                continue
            curves.append(DivisorClass(d, perm[:n]))
    return tuple(curves)


def is_minus_one_class(e: DivisorClass) -> bool:
    return intersect(e, e) == -1 and intersect(DivisorClass.canonical(e.n), e) == -1


def uniform_effective(n: int, d: int, m: int) -> bool:
    """Whether ``d*E0 - m*(E_1 + ... + E_n)`` is effective for general points."""
    if d < 0 or m < 0:
        raise ValueError(f"need d, m >= 0, got {(d, m)}")
    if n in (1, 2):
        return d >= m
    if n == 3:
        return 2 * d >= 3 * m
    if n == 5:
        return d >= 2 * m
    if n == 6:
        return 5 * d >= 12 * m
    if n == 7:
        return 8 * d >= 21 * m
    if n == 8:
        return 17 * d >= 48 * m
    if n == 4:
        raise NotImplementedError("n=4 has no closed effectivity test here; use the oracle")
    raise ValueError(f"n must be in 1..8, got {n}")


def uniform_irregular(n: int, d: int, m: int) -> bool:
    """Whether ``h^1(d*E0 - m*sum E_i) > 0``, via a (-1)-curve meeting it at <= -2.

    Not valid for ``n = 1`` or ``n = 4``, where irregular classes exist with no
    witnessing curve.
    """
    if n in (1, 4):
        raise NotImplementedError(f"no curve criterion for n={n}; use the oracle")
    if not 2 <= n <= 8:
        raise ValueError(f"n must be in 2..8, got {n}")
    if d < 0 or m < 0:
        raise ValueError(f"need d, m >= 0, got {(d, m)}")
    f = DivisorClass.uniform(n, d, m)
    return min(intersect(e, f) for e in minus_one_curves(n)) <= -2


_INJECTIVITY_COEFFS = {8: (17, 11), 7: (8, 5), 6: (5, 3), 5: (5, 3)}


def injectivity_bound(n: int, t: int) -> int:
    """Exclusive bound ``M``: ``A_{m-1} -> A_m`` is injective for every ``m < M``.

    Applies to ``n`` generic ``t``-th powers in four variables, ``5 <= n <= 8``.
    """
    if n not in _INJECTIVITY_COEFFS:
        raise ValueError(f"n must be in 5..8, got {n}")
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    num, den = _INJECTIVITY_COEFFS[n]
    return -((-(num * (t - 1) + 2)) // den)


def restricted_class(n: int, t: int, m: int) -> DivisorClass:
    """``D'_m = m*E0 - (m - t + 1)*sum E_i`` on the blown-up hyperplane."""
    return DivisorClass.uniform(n, m, m - t + 1)


def worst_curve_value(n: int, t: int, m: int) -> int:
    """Minimum of ``E . D'_m`` over all (-1)-curves ``E``; needs ``m >= t``."""
    if m < t:
        raise ValueError(f"need m >= t, got m={m}, t={t}")
    dm = restricted_class(n, t, m)
    return min(intersect(e, dm) for e in minus_one_curves(n))


def worst_curve(n: int, t: int, m: int) -> DivisorClass:
    dm = restricted_class(n, t, m)
    return min(minus_one_curves(n), key=lambda e: (intersect(e, dm), -e.d))


def expected_h0(r: int, j: int, mults: Sequence[int]) -> int:
    """Riemann-Roch count ``C(r-1+j, r-1) - sum C(r-2+m_i, r-1)`` for fat points in ``P^{r-1}``.

    The true ``h^0`` equals this plus ``h^1``, so it may be negative.
    """
    return binom(r - 1 + j, r - 1) - sum(binom(r - 2 + m, r - 1) for m in mults)


def five_thirds_degree(t: int) -> int:
    """``ceil(5t/3) - 1``, the degree at which the conic through five points first bites."""
    return -(-5 * t // 3) - 1
