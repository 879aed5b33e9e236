import random

import pytest

from trimmedpoly.field import OpCounter, PrimeModulus, is_prime

PRIMES = [5, 7, 65537, 2**31 - 1]


def test_is_prime_basics():
    assert is_prime(2) and is_prime(3) and is_prime(65537)
    assert is_prime(2**31 - 1)
    assert not is_prime(1) and not is_prime(0) and not is_prime(-7)
    assert not is_prime(65536) and not is_prime(2**31)
    # Carmichael number
    assert not is_prime(561)


def test_modulus_rejects_bad_values():
    with pytest.raises(ValueError):
        PrimeModulus(4)
    with pytest.raises(ValueError):
        PrimeModulus(1)
    with pytest.raises(ValueError):
        PrimeModulus(2**62 + 1)
    with pytest.raises(ValueError):
        PrimeModulus("7")


def test_add_mul_trivia():
    mod = PrimeModulus(5)
    a, b = mod.element(3), mod.element(4)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (mod.element(0) + a) == a
    assert (mod.element(4) + mod.element(1)).value == 0  # p-1 + 1 wraps
    assert (a * mod.element(1)) == a
    mod7 = PrimeModulus(7)
    assert (mod7.element(2) * mod7.element(3)).value == 6


def test_modulus_mismatch_rejected():
    a = PrimeModulus(5).element(3)
    b = PrimeModulus(7).element(3)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * b


def test_inverse():
    mod = PrimeModulus(7)
    inv3 = mod.element(3).inverse()
    assert inv3.value == 5
    assert (mod.element(3) * inv3).value == 1
    assert mod.element(1).inverse().value == 1
    assert mod.element(6).inverse().value == 6  # (-1)^2 = 1
    with pytest.raises(ZeroDivisionError):
        mod.element(0).inverse()


def test_pow_trivia():
    mod = PrimeModulus(5)
    assert (mod.element(2) ** 3).value == 3
    assert (mod.element(4) ** 0).value == 1
    assert (mod.element(0) ** 0).value == 1
    assert (mod.element(0) ** 9).value == 0
    with pytest.raises(ValueError):
        mod.element(2) ** -1


def test_pow_matches_repeated_mul():
    mod = PrimeModulus(65537)
    rng = random.Random(0)
    for _ in range(50):
        a = rng.randrange(mod.p)
        acc = 1
        for e in range(17):
            assert mod.pow(a, e) == acc
            acc = acc * a % mod.p


@pytest.mark.parametrize("p", PRIMES)
def test_field_axioms(p):
    mod = PrimeModulus(p)
    rng = random.Random(p)
    for _ in range(10_000):
        a, b, c = (rng.randrange(p) for _ in range(3))
        assert mod.add(mod.add(a, b), c) == mod.add(a, mod.add(b, c))
        assert mod.add(a, b) == mod.add(b, a)
        assert mod.mul(mod.mul(a, b), c) == mod.mul(a, mod.mul(b, c))
        assert mod.mul(a, b) == mod.mul(b, a)
        assert mod.mul(a, mod.add(b, c)) == mod.add(mod.mul(a, b),
                                                    mod.mul(a, c))
        if a:
            assert mod.mul(a, mod.inv(a)) == 1


def test_sub_neg():
    mod = PrimeModulus(11)
    assert mod.sub(3, 7) == 7
    assert mod.neg(4) == 7
    assert mod.neg(0) == 0
    assert (mod.element(3) - mod.element(7)).value == 7
    assert (-mod.element(4)).value == 7


def test_element_equality_and_hash():
    mod = PrimeModulus(7)
    assert mod.element(3) == mod.element(10)
    assert mod.element(3) == 3
    assert mod.element(3) == 10
    assert mod.element(3) != PrimeModulus(5).element(3)
    assert hash(mod.element(3)) == hash(mod.element(10))
    assert int(mod.element(3)) == 3
    assert bool(mod.element(3)) and not bool(mod.element(0))


def test_counter_tallies_scalar_ops():
    mod = PrimeModulus(7)
    with mod.counting() as ctr:
        mod.mul(2, 3)
        mod.add(1, 1)
        mod.sub(1, 1)
        mod.inv(3)
        mod.pow(2, 5)  # 101b: 2 result muls + 2 squarings... popcount+bitlen-1 = 4
    assert ctr.mul_count == 1 + 4
    assert ctr.add_count == 2
    assert ctr.inv_count == 1
    # detached afterwards
    assert mod.counter is None
    mod.mul(2, 3)
    assert ctr.mul_count == 5


def test_counter_reset_and_nesting():
    mod = PrimeModulus(7)
    ctr = OpCounter()
    ctr.mul_count = 3
    ctr.reset()
    assert ctr.total() == 0
    with mod.counting() as outer:
        mod.mul(1, 1)
        with mod.counting() as inner:
            mod.mul(1, 1)
        mod.mul(1, 1)
    assert inner.mul_count == 1
    assert outer.mul_count == 2


def test_pow_cost_formula():
    # popcount(e) + bitlen(e) - 1 multiplications for e >= 1
    mod = PrimeModulus(101)
    for e in range(0, 33):
        with mod.counting() as ctr:
            mod.pow(7, e)
        expected = 0 if e == 0 else bin(e).count("1") + e.bit_length() - 1
        assert ctr.mul_count == expected, e


def test_residue_coercion():
    mod = PrimeModulus(7)
    assert mod.residue(-1) == 6
    assert mod.residue(mod.element(3)) == 3
    with pytest.raises(ValueError):
        mod.residue(PrimeModulus(5).element(1))
    with pytest.raises(TypeError):
        mod.residue(1.5)
