"""Window binomial coefficients and canonical enumeration of bounded
exponent vectors.

``ebc(n, k, d)`` counts vectors in {0,...,d}^n whose coordinates sum to
exactly k; ``ebc_cum(n, D, d)`` counts those summing to at most D. They
obey the (d+1)-window generalization of Pascal's rule,

    ebc(n, k, d) = sum_{j=0}^{d} ebc(n-1, k-j, d),

which is how the tables here are filled.

The canonical order on these vectors is last-coordinate-major: sort by
the last coordinate ascending, then recursively order the remaining
prefix under the reduced sum budget. Every coefficient vector and
evaluation table in this package is addressed by ``rank`` in this order,
so that fixing the last coordinate always selects a contiguous slice.

Counts are guarded at 2^63: parameter choices whose vector count exceeds
that are not materializable anyway and raise CapacityError.
"""

from __future__ import annotations

from functools import lru_cache

COUNT_LIMIT = (1 << 63) - 1


class CapacityError(OverflowError):
    """A requested count exceeds the 2^63 - 1 guard."""


def _check_params(n: int, d: int) -> None:
    if n < 0:
        raise ValueError(f"variable count must be >= 0, got {n}")
    if d < 1:
        raise ValueError(f"individual degree bound must be >= 1, got {d}")


@lru_cache(maxsize=None)
def _rows(n: int, d: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(exact counts, cumulative counts) for sums k = 0..n*d, unguarded."""
    if n == 0:
        return (1,), (1,)
    prev, _ = _rows(n - 1, d)
    top = n * d
    row = []
    for k in range(top + 1):
        lo = max(0, k - d)
        hi = min(k, (n - 1) * d)
        row.append(sum(prev[lo:hi + 1]))
    cum = []
    running = 0
    for v in row:
        running += v
        cum.append(running)
    return tuple(row), tuple(cum)


def ebc(n: int, k: int, d: int) -> int:
    """Number of vectors in {0,...,d}^n with coordinate sum exactly k."""
    _check_params(n, d)
    if k < 0 or k > n * d:
        return 0
    value = _rows(n, d)[0][k]
    if value > COUNT_LIMIT:
        raise CapacityError(f"ebc({n}, {k}, {d}) exceeds 2^63 - 1")
    return value


def ebc_cum(n: int, D: int, d: int) -> int:
    """Number of vectors in {0,...,d}^n with coordinate sum at most D."""
    _check_params(n, d)
    if D < 0:
        return 0
    value = _rows(n, d)[1][min(D, n * d)]
    if value > COUNT_LIMIT:
        raise CapacityError(f"ebc_cum({n}, {D}, {d}) exceeds 2^63 - 1")
    return value


class EbcTable:
    """Precomputed count tables for 0 <= m <= n_max, 0 <= k <= D_max.

    Construction rejects parameter choices where the total vector count
    ebc_cum(n_max, D_max, d) would exceed the 2^63 guard.
    """

    __slots__ = ("n_max", "d", "D_max", "counts", "cums")

    def __init__(self, n_max: int, d: int, D_max: int) -> None:
        _check_params(n_max, d)
        if D_max < 0:
            raise ValueError(f"D_max must be >= 0, got {D_max}")
        total = _rows(n_max, d)[1][min(D_max, n_max * d)]
        if total > COUNT_LIMIT:
            raise CapacityError(
                f"ebc_cum({n_max}, {D_max}, {d}) = {total} exceeds 2^63 - 1")
        self.n_max = n_max
        self.d = d
        self.D_max = D_max
        counts = []
        cums = []
        for m in range(n_max + 1):
            row, cum = _rows(m, d)
            counts.append(tuple(row[:D_max + 1]))
            cums.append(tuple(cum[:D_max + 1]))
        self.counts = tuple(counts)
        self.cums = tuple(cums)

    def count(self, m: int, k: int) -> int:
        if not 0 <= m <= self.n_max:
            raise ValueError(f"m = {m} outside [0, {self.n_max}]")
        if k < 0 or k > m * self.d:
            return 0
        if k > self.D_max:
            raise ValueError(f"k = {k} exceeds table bound {self.D_max}")
        return self.counts[m][k]

    def cum(self, m: int, D: int) -> int:
        if not 0 <= m <= self.n_max:
            raise ValueError(f"m = {m} outside [0, {self.n_max}]")
        if D < 0:
            return 0
        D = min(D, m * self.d)
        if D > self.D_max:
            raise ValueError(f"D = {D} exceeds table bound {self.D_max}")
        return self.cums[m][D]


def check_index(exponents, n: int, d: int, D: int) -> tuple[int, ...]:
    """Validate an exponent vector against (n, d, D); returns it as a tuple."""
    exps = tuple(exponents)
    if len(exps) != n:
        raise ValueError(f"expected {n} exponents, got {len(exps)}")
    for i, e in enumerate(exps):
        if not isinstance(e, int) or isinstance(e, bool):
            raise ValueError(f"exponent {i + 1} is not an int: {e!r}")
        if not 0 <= e <= d:
            raise ValueError(
                f"exponent {i + 1} = {e} outside [0, {d}] in {exps}")
    if sum(exps) > D:
        raise ValueError(
            f"exponent sum {sum(exps)} exceeds total degree bound {D} "
            f"in {exps}")
    return exps


@lru_cache(maxsize=None)
def _enumerate(n: int, d: int, D: int) -> tuple[tuple[int, ...], ...]:
    if D < 0:
        return ()
    if n == 0:
        return ((),)
    out = []
    for j in range(min(d, D) + 1):
        out.extend(prefix + (j,) for prefix in _enumerate(n - 1, d, D - j))
    return tuple(out)


def enumerate_trimmed(n: int, d: int, D: int) -> tuple[tuple[int, ...], ...]:
    """All admissible exponent vectors for (n, d, D) in canonical order."""
    _check_params(n, d)
    if D < 0:
        raise ValueError(f"total degree bound must be >= 0, got {D}")
    if ebc_cum(n, D, d) > COUNT_LIMIT:  # raises CapacityError first
        raise CapacityError("enumeration too large")
    return _enumerate(n, d, min(D, n * d))


def rank(exponents, n: int, d: int, D: int) -> int:
    """Position of an exponent vector in the canonical order.

    O(n*d) via the block structure: vectors whose last coordinate is j
    occupy one contiguous block per j, of size ebc_cum(n-1, D-j, d).
    """
    exps = check_index(exponents, n, d, D)
    r = 0
    budget = D
    for m in range(n, 0, -1):
        e = exps[m - 1]
        for j in range(e):
            r += ebc_cum(m - 1, budget - j, d)
        budget -= e
    return r


def unrank(position: int, n: int, d: int, D: int) -> tuple[int, ...]:
    """Inverse of ``rank``: the exponent vector at a canonical position."""
    _check_params(n, d)
    total = ebc_cum(n, D, d)
    if not 0 <= position < total:
        raise ValueError(
            f"position {position} outside [0, {total}) for "
            f"(n={n}, d={d}, D={D})")
    r = position
    budget = D
    out = []
    for m in range(n, 0, -1):
        j = 0
        while True:
            block = ebc_cum(m - 1, budget - j, d)
            if r < block:
                break
            r -= block
            j += 1
        out.append(j)
        budget -= j
    return tuple(reversed(out))
