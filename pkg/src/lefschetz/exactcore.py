"""Exact integer combinatorics and dense linear algebra over a prime field.

Field elements are plain Python ints in ``[0, p)``; dense matrices are 2-D
numpy arrays. Rank computations run in a numba kernel that works on
``uint64`` storage, so the modulus must be below ``2**32`` for the fast path
(products of two residues then fit in 64 bits). Larger primes fall back to a
pure-Python elimination on object arrays.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numba
import numpy as np

MERSENNE31 = (1 << 31) - 1
DEFAULT_PRIME = MERSENNE31

_M31 = np.uint64(MERSENNE31)
_S31 = np.uint64(31)


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the zero-extension convention.

    Returns 0 whenever ``b < 0``, ``a < 0`` or ``a < b``; the closed forms for
    Hilbert functions rely on negative tops vanishing silently.
    """
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


@lru_cache(maxsize=None)
def eulerian(n: int, j: int) -> int:
    """Number of permutations of ``n`` letters with exactly ``j`` descents."""
    if n == 0:
        return 1 if j == 0 else 0
    if j < 0 or j >= n:
        return 0
    return (j + 1) * eulerian(n - 1, j) + (n - j) * eulerian(n - 1, j - 1)


def multinomial_mod_p(t: int, exponents: Sequence[int], p: int = DEFAULT_PRIME) -> int:
    """``t! / prod(e!)`` reduced mod ``p``; exponents must sum to ``t``."""
    if any(e < 0 for e in exponents):
        raise ValueError(f"negative exponent in {tuple(exponents)}")
    if sum(exponents) != t:
        raise ValueError(f"exponents {tuple(exponents)} do not sum to {t}")
    value = math.factorial(t)
    for e in exponents:
        value //= math.factorial(e)
    return value % p


# ---------------------------------------------------------------------------
# rank kernels


@numba.njit(cache=True, inline="always")
def _fold31_partial(v):
    # one folding step: any v < 2**63 comes out below 2**33
    return (v & _M31) + (v >> _S31)


@numba.njit(cache=True, inline="always")
def _fold31(v):
    v = (v & _M31) + (v >> _S31)
    v = (v & _M31) + (v >> _S31)
    return min(v, v - _M31)


@numba.njit(cache=True, nogil=True)
def _rank_mersenne31(a):
    # Rows below the pivot row are kept only partially reduced (< 2**33);
    # entries are fully reduced when they are inspected as pivot candidates
    # or used as multipliers. The pivot row itself is always fully reduced,
    # so each update a + g*b stays below 2**63.
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            v = _fold31(a[i, c])
            a[i, c] = v
            if v != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, cols):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        # Fermat inverse of the pivot
        base = a[r, c]
        inv = np.uint64(1)
        e = MERSENNE31 - 2
        while e > 0:
            if e & 1:
                inv = _fold31(inv * base)
            base = _fold31(base * base)
            e >>= 1
        for k in range(c, cols):
            a[r, k] = _fold31(_fold31(a[r, k]) * inv)
        for i in range(r + 1, rows):
            f = _fold31(a[i, c])
            if f == 0:
                continue
            g = _M31 - f
            for k in range(c, cols):
                a[i, k] = _fold31_partial(a[i, k] + g * a[r, k])
        r += 1
    return r


@numba.njit(cache=True, nogil=True)
def _rank_generic(a, p):
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(c, cols):
                tmp = a[r, k]
                a[r, k] = a[piv, k]
                a[piv, k] = tmp
        base = a[r, c]
        inv = np.uint64(1)
        e = p - np.uint64(2)
        while e > 0:
            if e & np.uint64(1):
                inv = (inv * base) % p
            base = (base * base) % p
            e >>= np.uint64(1)
        for k in range(c, cols):
            a[r, k] = (a[r, k] * inv) % p
        for i in range(r + 1, rows):
            f = a[i, c]
            if f == 0:
                continue
            g = p - f
            for k in range(c, cols):
                a[i, k] = (a[i, k] + g * a[r, k]) % p
        r += 1
    return r


def _rank_python(rows: list[list[int]], p: int) -> int:
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] % p
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def as_field_array(m, p: int = DEFAULT_PRIME) -> np.ndarray:
    """Copy ``m`` into a fresh ``uint64`` array with entries reduced mod ``p``."""
    arr = np.asarray(m)
    if arr.ndim != 2:
        arr = arr.reshape((arr.shape[0] if arr.ndim else 0, -1))
    if arr.dtype == np.uint64:
        out = arr % np.uint64(p)
    elif arr.dtype.kind in "iu" and arr.dtype.itemsize <= 8:
        out = np.mod(arr.astype(np.int64), p).astype(np.uint64)
    else:
        out = np.array([[int(x) % p for x in row] for row in arr.tolist()], dtype=np.uint64)
        out = out.reshape(arr.shape)
    return np.ascontiguousarray(out)


def rank(m, p: int = DEFAULT_PRIME) -> int:
    """Rank of a dense matrix over ``F_p``; the argument is never modified."""
    if p >= 1 << 32:
        rows = [[int(x) % p for x in row] for row in np.asarray(m, dtype=object).tolist()]
        return _rank_python(rows, p)
    a = as_field_array(m, p)
    if a.size == 0:
        return 0
    if p == MERSENNE31:
        return int(_rank_mersenne31(a))
    return int(_rank_generic(a, np.uint64(p)))


def is_prime(p: int) -> bool:
    from sympy import isprime

    return bool(isprime(p))
