"""Dense bounded-degree polynomials and their sparse I/O form.

A TrimmedPoly over F_p in n variables keeps one residue per admissible
monomial (individual degree <= d, total degree <= D), flattened in the
canonical order from ``combinat``. Because that order is last-variable
major, the decomposition P = sum_i P_i * X_n^i used by the fast
transforms is a plain partition of the coefficient vector into
contiguous blocks (``split_top`` / ``join_top``).

SparsePoly is the human-facing term list used by the JSON formats; it
never participates in the algorithms.
"""

from __future__ import annotations

import random

from .combinat import check_index, ebc_cum, enumerate_trimmed, rank
from .field import PrimeModulus


class ValidationError(ValueError):
    """Malformed domain input (bad exponent, shape mismatch, bad table)."""


def _normalize_degree(n: int, d: int, D: int) -> int:
    """Clamp a total-degree budget into canonical form; negatives -> -1."""
    if D < 0:
        return -1
    return min(D, n * d)


class TrimmedPoly:
    """Dense coefficient vector of length ebc_cum(n, D, d) over F_p.

    Slot r holds the coefficient of the monomial whose exponent vector is
    unrank(r, n, d, D). The degree bounds are upper bounds, not exact
    degrees. A negative D denotes the empty (identically zero) polynomial
    and is normalized to -1. Instances are treated as immutable.
    """

    __slots__ = ("modulus", "n", "d", "D", "coeffs")

    def __init__(self, modulus: PrimeModulus, n: int, d: int, D: int,
                 coeffs) -> None:
        if n < 0:
            raise ValidationError(f"variable count must be >= 0, got {n}")
        if d < 1:
            raise ValidationError(f"individual degree must be >= 1, got {d}")
        D = _normalize_degree(n, d, D)
        expected = ebc_cum(n, D, d) if D >= 0 else 0
        vals = tuple(modulus.residue(c) for c in coeffs)
        if len(vals) != expected:
            raise ValidationError(
                f"coefficient vector has length {len(vals)}, expected "
                f"{expected} for (n={n}, d={d}, D={D})")
        self.modulus = modulus
        self.n = n
        self.d = d
        self.D = D
        self.coeffs = vals

    @classmethod
    def zero(cls, modulus: PrimeModulus, n: int, d: int,
             D: int) -> "TrimmedPoly":
        D = _normalize_degree(n, d, D)
        size = ebc_cum(n, D, d) if D >= 0 else 0
        return cls(modulus, n, d, D, [0] * size)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TrimmedPoly):
            return (self.modulus.p == other.modulus.p and self.n == other.n
                    and self.d == other.d and self.D == other.D
                    and self.coeffs == other.coeffs)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.modulus.p, self.n, self.d, self.D, self.coeffs))

    def __repr__(self) -> str:
        return (f"TrimmedPoly(n={self.n}, d={self.d}, D={self.D}, "
                f"p={self.modulus.p}, {len(self.coeffs)} coeffs)")


class SparsePoly:
    """Term list (exponent vector, coefficient) with zero terms omitted.

    Duplicate exponent vectors and out-of-bound exponents are rejected at
    construction, naming the offending term.
    """

    __slots__ = ("modulus", "n", "d", "D", "terms")

    def __init__(self, modulus: PrimeModulus, n: int, d: int, D: int,
                 terms) -> None:
        if n < 0:
            raise ValidationError(f"variable count must be >= 0, got {n}")
        if d < 1:
            raise ValidationError(f"individual degree must be >= 1, got {d}")
        D = _normalize_degree(n, d, D)
        seen = set()
        kept = []
        for exps, coeff in terms:
            try:
                key = check_index(exps, n, d, D if D >= 0 else -1)
            except ValueError as exc:
                raise ValidationError(f"bad term {tuple(exps)!r}: {exc}") from exc
            if key in seen:
                raise ValidationError(f"duplicate term for exponents {key}")
            seen.add(key)
            c = modulus.residue(coeff)
            if c:
                kept.append((key, c))
        self.modulus = modulus
        self.n = n
        self.d = d
        self.D = D
        self.terms = tuple(kept)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePoly):
            return (self.modulus.p == other.modulus.p and self.n == other.n
                    and self.d == other.d and self.D == other.D
                    and sorted(self.terms) == sorted(other.terms))
        return NotImplemented

    def __repr__(self) -> str:
        return (f"SparsePoly(n={self.n}, d={self.d}, D={self.D}, "
                f"p={self.modulus.p}, {len(self.terms)} terms)")


def from_sparse(sparse: SparsePoly) -> TrimmedPoly:
    """Densify a term list into canonical-order coefficients."""
    size = ebc_cum(sparse.n, sparse.D, sparse.d) if sparse.D >= 0 else 0
    coeffs = [0] * size
    for exps, coeff in sparse.terms:
        coeffs[rank(exps, sparse.n, sparse.d, sparse.D)] = coeff
    return TrimmedPoly(sparse.modulus, sparse.n, sparse.d, sparse.D, coeffs)


def to_sparse(poly: TrimmedPoly) -> SparsePoly:
    """Inverse of ``from_sparse`` up to term order (rank order here)."""
    if poly.D < 0:
        return SparsePoly(poly.modulus, poly.n, poly.d, poly.D, [])
    indices = enumerate_trimmed(poly.n, poly.d, poly.D)
    terms = [(exps, c) for exps, c in zip(indices, poly.coeffs) if c]
    return SparsePoly(poly.modulus, poly.n, poly.d, poly.D, terms)


def split_top(poly: TrimmedPoly) -> list[TrimmedPoly]:
    """The d+1 last-variable slices P_i with P = sum_i P_i * X_n^i.

    P_i is (n-1)-variate with total-degree budget min(D-i, (n-1)d); for
    D-i < 0 it is the empty polynomial. Each slice is a contiguous block
    of the canonical coefficient vector.
    """
    if poly.n == 0:
        raise ValidationError("cannot split a 0-variate polynomial")
    n, d, D = poly.n, poly.d, poly.D
    parts = []
    offset = 0
    for i in range(d + 1):
        budget = _normalize_degree(n - 1, d, D - i)
        size = ebc_cum(n - 1, budget, d) if budget >= 0 else 0
        parts.append(TrimmedPoly(poly.modulus, n - 1, d, budget,
                                 poly.coeffs[offset:offset + size]))
        offset += size
    return parts


def join_top(parts) -> TrimmedPoly:
    """Reassemble split_top output: P = sum_i parts[i] * X_n^i.

    The parent total-degree bound is recovered as max_i(parts[i].D + i),
    which is exact for any split_top output; inconsistent part budgets
    raise.
    """
    parts = list(parts)
    if not parts:
        raise ValidationError("join_top needs at least one part")
    d = parts[0].d
    if len(parts) != d + 1:
        raise ValidationError(
            f"expected {d + 1} parts for individual degree {d}, "
            f"got {len(parts)}")
    m = parts[0].n
    modulus = parts[0].modulus
    budgets = [part.D for part in parts]
    D = max((b + i for i, b in enumerate(budgets) if b >= 0), default=-1)
    coeffs = []
    for i, part in enumerate(parts):
        if part.n != m or part.d != d or part.modulus.p != modulus.p:
            raise ValidationError(
                f"part {i} has shape (n={part.n}, d={part.d}, "
                f"p={part.modulus.p}), expected (n={m}, d={d}, p={modulus.p})")
        expected = _normalize_degree(m, d, D - i)
        if part.D != expected:
            raise ValidationError(
                f"part {i} has total degree bound {part.D}, expected "
                f"{expected} for a parent bound of {D}")
        coeffs.extend(part.coeffs)
    return TrimmedPoly(modulus, m + 1, d, D, coeffs)


def naive_eval_point(poly: TrimmedPoly, point) -> int:
    """Term-by-term evaluation at one point; the slow correctness oracle.

    Computes sum_t c_t * prod_i x_i^(e_i) over the nonzero terms, with the
    powers done by square-and-multiply. Exact; costs O(N * n) field
    multiplications per point.
    """
    mod = poly.modulus
    xs = [mod.residue(x) for x in point]
    if len(xs) != poly.n:
        raise ValidationError(
            f"point has {len(xs)} coordinates, expected {poly.n}")
    if poly.D < 0:
        return 0
    indices = enumerate_trimmed(poly.n, poly.d, poly.D)
    acc = 0
    for exps, coeff in zip(indices, poly.coeffs):
        if not coeff:
            continue
        term = coeff
        for x, e in zip(xs, exps):
            term = mod.mul(term, mod.pow(x, e))
        acc = mod.add(acc, term)
    return acc


def random_poly(n: int, d: int, D: int, modulus: PrimeModulus,
                seed: int) -> TrimmedPoly:
    """Uniform i.i.d. coefficients from a deterministic seeded generator."""
    D = _normalize_degree(n, d, D)
    size = ebc_cum(n, D, d) if D >= 0 else 0
    rng = random.Random(seed)
    p = modulus.p
    coeffs = [rng.randrange(p) for _ in range(size)]
    return TrimmedPoly(modulus, n, d, D, coeffs)
