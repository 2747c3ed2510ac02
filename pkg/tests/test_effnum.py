from math import gcd

import oracles
import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldindex.effnum import (
    EffClass,
    EffPartition,
    EvenTarget,
    census,
    classify_residue,
    eff_partitions,
    factorize,
    is_prime,
    totient,
)
from goldindex.errors import InvalidResidue, InvalidTarget

evens = st.integers(min_value=4, max_value=2000).map(lambda k: 2 * k)


class TestEvenTarget:
    def test_fields(self):
        t = EvenTarget.of(68)
        assert (t.n2, t.half, t.totient, t.partition_count) == (68, 34, 32, 16)

    @pytest.mark.parametrize("bad", [7, 6, 0, -8, 69])
    def test_rejects(self, bad):
        with pytest.raises(InvalidTarget):
            EvenTarget.of(bad)

    def test_rejects_non_int(self):
        with pytest.raises(InvalidTarget):
            EvenTarget.of(68.0)

    @given(evens)
    def test_totient_matches_count(self, n2):
        t = EvenTarget.of(n2)
        assert t.totient == oracles.totient(n2)
        assert t.partition_count * 2 == t.totient


class TestClassify:
    @pytest.mark.parametrize(
        "r, cls",
        [(3, EffClass.EffPrime), (17, EffClass.SharedFactor), (67, EffClass.Boundary),
         (9, EffClass.EffProduct), (1, EffClass.One)],
    )
    def test_examples_68(self, r, cls):
        assert classify_residue(EvenTarget.of(68), r) is cls

    @pytest.mark.parametrize("r", [0, 2, 68, 69, -1])
    def test_rejects(self, r):
        with pytest.raises(InvalidResidue):
            classify_residue(EvenTarget.of(68), r)

    @given(evens)
    def test_every_odd_residue_has_one_class(self, n2):
        t = EvenTarget.of(n2)
        classes = [classify_residue(t, r) for r in range(1, n2, 2)]
        assert len(classes) == n2 // 2
        for r, cls in zip(range(1, n2, 2), classes):
            if gcd(r, n2) > 1:
                assert cls is EffClass.SharedFactor
            elif r == 1:
                assert cls is EffClass.One
            elif r == n2 - 1:
                assert cls is EffClass.Boundary
            else:
                assert cls is (EffClass.EffPrime if oracles.is_prime_td(r) else EffClass.EffProduct)


class TestCensus:
    def test_68(self):
        c = census(EvenTarget.of(68))
        assert c.s == 16 and c.product_count == 14
        assert c.eff_primes == (3, 5, 7, 11, 13, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)
        assert c.eff_products[:2] == (9, 15)
        assert c.boundary_is_prime and not c.half_is_prime

    def test_8(self):
        c = census(EvenTarget.of(8))
        assert c.eff_primes == (3, 5) and c.eff_products == ()

    def test_24(self):
        c = census(EvenTarget.of(24))
        assert c.eff_primes == (5, 7, 11, 13, 17, 19) and c.eff_products == ()

    def test_half_prime_recorded(self):
        assert census(EvenTarget.of(14)).half_is_prime

    @given(evens)
    def test_matches_brute_force(self, n2):
        c = census(EvenTarget.of(n2))
        assert list(c.eff_primes) == oracles.eff_primes(n2)
        assert list(c.eff_products) == oracles.eff_products(n2)
        assert c.s + c.product_count + 2 == oracles.totient(n2)
        assert list(c.eff_primes) == sorted(set(c.eff_primes))

    def test_position(self):
        c = census(EvenTarget.of(68))
        assert c.position(3) == 0 and c.position(61) == 15
        with pytest.raises(KeyError):
            c.position(9)


class TestPartitions:
    def test_68(self):
        parts = eff_partitions(EvenTarget.of(68))
        assert len(parts) == 16
        for pair in [(1, 67), (31, 37), (7, 61)]:
            assert EffPartition(*pair) in parts

    def test_small(self):
        assert eff_partitions(EvenTarget.of(8)) == [EffPartition(1, 7), EffPartition(3, 5)]
        assert eff_partitions(EvenTarget.of(10)) == [EffPartition(1, 9), EffPartition(3, 7)]

    def test_partition_count_identity_to_10000(self):
        for n2 in range(8, 10_001, 2):
            t = EvenTarget.of(n2)
            parts = eff_partitions(t)
            assert len(parts) == t.totient // 2, n2
        for p in eff_partitions(EvenTarget.of(9240)):
            assert p.low + p.high == 9240 and 0 < p.low <= p.high
            assert gcd(p.low, 9240) == 1 and gcd(p.high, 9240) == 1

    def test_containing(self):
        t = EvenTarget.of(68)
        assert EffPartition.containing(t, 61) == EffPartition(7, 61)
        assert EffPartition.containing(t, 7) == EffPartition(7, 61)


class TestPrimality:
    @pytest.mark.parametrize("n, expected", [(67, True), (63, False), (2147483647, True), (0, False),
                                             (1, False), (2, True), (1681, False)])
    def test_examples(self, n, expected):
        assert is_prime(n) is expected
        assert oracles.is_prime_td(n) is expected

    def test_agrees_with_trial_division_to_1e6(self):
        flags = oracles.prime_flags(1_000_000)
        mine = [is_prime(n) for n in range(1_000_001)]
        assert mine == flags.tolist()

    @pytest.mark.parametrize(
        "n, expected",
        [
            (3215031751, False),  # strong pseudoprime to bases 2, 3, 5, 7
            (3825123056546413051, False),  # strong pseudoprime to bases up to 23
            (18446744073709551557, True),  # largest prime below 2**64
            (2**61 - 1, True),
            ((2**31 - 1) * (2**31 - 19), False),
        ],
    )
    def test_large(self, n, expected):
        assert is_prime(n) is expected

    def test_range_checks(self):
        with pytest.raises(ValueError):
            is_prime(2**64)
        with pytest.raises(ValueError):
            is_prime(-3)

    @given(st.integers(min_value=2, max_value=10**12))
    def test_factorize(self, n):
        f = factorize(n)
        prod = 1
        for p, e in f:
            assert oracles.is_prime_td(p) if p < 10**7 else is_prime(p)
            prod *= p**e
        assert prod == n
        assert [p for p, _ in f] == sorted({p for p, _ in f})

    def test_totient(self):
        assert [totient(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
