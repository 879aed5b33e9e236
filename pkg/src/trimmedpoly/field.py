"""Exact arithmetic in prime fields F_p.

Residues are canonical Python ints in [0, p). The rest of the package
stores raw residues in its containers and shares a single PrimeModulus,
which doubles as the unit-cost field-operation layer: its add/sub/mul/
inv/pow methods work on ints and, when an OpCounter is attached via
``counting()``, tally every executed operation. FieldElement wraps one
residue for scalar work with operator syntax and modulus checking.
"""

from __future__ import annotations

from contextlib import contextmanager

MAX_MODULUS = (1 << 62) - 1

# Witness set proving n prime for all n < 3.3 * 10^24, far above 2^62.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test, exact for n < 2^64."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class OpCounter:
    """Running tally of executed field operations.

    Subtraction and negation count as additions. Counts only grow during a
    run; call ``reset()`` to clear explicitly.
    """

    __slots__ = ("mul_count", "add_count", "inv_count")

    def __init__(self) -> None:
        self.mul_count = 0
        self.add_count = 0
        self.inv_count = 0

    def reset(self) -> None:
        self.mul_count = 0
        self.add_count = 0
        self.inv_count = 0

    def total(self) -> int:
        return self.mul_count + self.add_count + self.inv_count

    def __repr__(self) -> str:
        return (f"OpCounter(mul={self.mul_count}, add={self.add_count}, "
                f"inv={self.inv_count})")


class PrimeModulus:
    """A prime p with 2 <= p < 2^62, plus raw-residue arithmetic on F_p."""

    __slots__ = ("p", "counter")

    def __init__(self, p: int) -> None:
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError(f"modulus must be an int, got {type(p).__name__}")
        if not 2 <= p <= MAX_MODULUS:
            raise ValueError(f"modulus must lie in [2, 2^62), got {p}")
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.counter: OpCounter | None = None

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrimeModulus):
            return self.p == other.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.p)

    def __repr__(self) -> str:
        return f"PrimeModulus({self.p})"

    def element(self, value) -> "FieldElement":
        return FieldElement(self.residue(value), self)

    def residue(self, value) -> int:
        """Canonicalize an int or FieldElement into [0, p)."""
        if isinstance(value, FieldElement):
            if value.modulus.p != self.p:
                raise ValueError(
                    f"modulus mismatch: {value.modulus.p} vs {self.p}")
            return value.value
        if isinstance(value, int) and not isinstance(value, bool):
            return value % self.p
        raise TypeError(f"cannot coerce {type(value).__name__} to a residue")

    @contextmanager
    def counting(self):
        """Attach a fresh OpCounter for the duration of the block.

        Nested blocks shadow the outer counter; single-threaded use only.
        """
        prev = self.counter
        ctr = OpCounter()
        self.counter = ctr
        try:
            yield ctr
        finally:
            self.counter = prev

    # Raw residue ops. Inputs must already be canonical.

    def add(self, a: int, b: int) -> int:
        c = self.counter
        if c is not None:
            c.add_count += 1
        s = a + b
        return s - self.p if s >= self.p else s

    def sub(self, a: int, b: int) -> int:
        c = self.counter
        if c is not None:
            c.add_count += 1
        s = a - b
        return s + self.p if s < 0 else s

    def neg(self, a: int) -> int:
        c = self.counter
        if c is not None:
            c.add_count += 1
        return self.p - a if a else 0

    def mul(self, a: int, b: int) -> int:
        c = self.counter
        if c is not None:
            c.mul_count += 1
        return a * b % self.p

    def inv(self, a: int) -> int:
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        c = self.counter
        if c is not None:
            c.inv_count += 1
        t, new_t = 0, 1
        r, new_r = self.p, a
        while new_r:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        return t % self.p

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply; a^0 = 1 including a = 0.

        Costs popcount(e) + bitlen(e) - 1 counted multiplications for e >= 1.
        """
        if e < 0:
            raise ValueError("exponent must be non-negative")
        if e == 0:
            return 1
        result = 1
        base = a
        while True:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if not e:
                return result
            base = self.mul(base, base)


class FieldElement:
    """A canonical residue bound to its PrimeModulus.

    Immutable; binary operators require both operands to share the modulus.
    """

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: PrimeModulus) -> None:
        self.value = value % modulus.p
        self.modulus = modulus

    def _other(self, other) -> int:
        if not isinstance(other, FieldElement):
            raise TypeError(
                f"expected FieldElement, got {type(other).__name__}")
        if other.modulus.p != self.modulus.p:
            raise ValueError(
                f"modulus mismatch: {self.modulus.p} vs {other.modulus.p}")
        return other.value

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.modulus.add(self.value, self._other(other)),
                            self.modulus)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.modulus.sub(self.value, self._other(other)),
                            self.modulus)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return FieldElement(self.modulus.mul(self.value, self._other(other)),
                            self.modulus)

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.modulus.neg(self.value), self.modulus)

    def __pow__(self, exponent: int) -> "FieldElement":
        return FieldElement(self.modulus.pow(self.value, exponent),
                            self.modulus)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.modulus.inv(self.value), self.modulus)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        o = self._other(other)
        return FieldElement(self.modulus.mul(self.value, self.modulus.inv(o)),
                            self.modulus)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return (self.value == other.value
                    and self.modulus.p == other.modulus.p)
        if isinstance(other, int):
            return self.value == other % self.modulus.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus.p))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"FieldElement({self.value} mod {self.modulus.p})"
