"""Effective-number classification of the odd residues of an even number.

For an even target ``2N`` every odd ``r`` in ``(0, 2N)`` falls in exactly one
class: it shares a factor with ``2N``, it is ``1``, it is the boundary unit
``2N - 1``, or it is an eff-prime / eff-product lying strictly between them.
"""

from __future__ import annotations

import enum
from bisect import bisect_left
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import InvalidResidue, InvalidTarget

__all__ = [
    "Census",
    "EffClass",
    "EffPartition",
    "EvenTarget",
    "census",
    "classify_residue",
    "eff_partitions",
    "factorize",
    "is_prime",
    "totient",
]

UINT64_LIMIT = 1 << 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# (bound, witnesses): the witness set is exact for every n below bound.
_WITNESS_TABLE = (
    (2_047, (2,)),
    (1_373_653, (2, 3)),
    (25_326_001, (2, 3, 5)),
    (3_215_031_751, (2, 3, 5, 7)),
    (2_152_302_898_747, (2, 3, 5, 7, 11)),
    (3_474_749_660_383, (2, 3, 5, 7, 11, 13)),
    (341_550_071_728_321, (2, 3, 5, 7, 11, 13, 17)),
    (UINT64_LIMIT, _SMALL_PRIMES),
)


def _strong_probable_prime(n: int, a: int, d: int, r: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Deterministic primality for 0 <= n < 2**64 (fixed Miller-Rabin witnesses)."""
    if n < 0:
        raise ValueError(f"is_prime expects a nonnegative integer, got {n}")
    if n >= UINT64_LIMIT:
        raise ValueError(f"{n} exceeds the 64-bit range supported by is_prime")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for bound, witnesses in _WITNESS_TABLE:
        if n < bound:
            return all(_strong_probable_prime(n, a, d, r) for a in witnesses)
    raise AssertionError("unreachable")


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 by trial division, as ((p, e), ...)."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p, step = 5, 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


@dataclass(frozen=True)
class EvenTarget:
    """An even number 2N > 6 together with N, phi(2N) and F = phi(2N)/2."""

    n2: int
    half: int
    totient: int
    partition_count: int

    @classmethod
    def of(cls, n2: int) -> EvenTarget:
        if isinstance(n2, bool) or not isinstance(n2, int):
            raise InvalidTarget(f"target must be an integer, got {n2!r}")
        if n2 % 2 or n2 < 8:
            raise InvalidTarget(f"target must be an even integer >= 8, got {n2}")
        phi = totient(n2)
        return cls(n2=n2, half=n2 // 2, totient=phi, partition_count=phi // 2)

    def __post_init__(self):
        if self.n2 % 2 or self.n2 < 8 or self.half * 2 != self.n2 or self.partition_count * 2 != self.totient:
            raise InvalidTarget(f"inconsistent target fields: {self}")

    def is_unit(self, r: int) -> bool:
        return gcd(r, self.n2) == 1


def as_target(target: EvenTarget | int) -> EvenTarget:
    return target if isinstance(target, EvenTarget) else EvenTarget.of(target)


class EffClass(enum.Enum):
    SharedFactor = "SharedFactor"
    One = "One"
    Boundary = "Boundary"
    EffPrime = "EffPrime"
    EffProduct = "EffProduct"


@dataclass(frozen=True, order=True)
class EffPartition:
    """Unordered pair {low, high} of units with low + high = 2N."""

    low: int
    high: int

    @classmethod
    def containing(cls, target: EvenTarget, r: int) -> EffPartition:
        r %= target.n2
        other = target.n2 - r
        return cls(min(r, other), max(r, other))


@dataclass(frozen=True)
class Census:
    target: EvenTarget
    eff_primes: tuple[int, ...]
    eff_products: tuple[int, ...]
    s: int
    boundary_is_prime: bool
    half_is_prime: bool = False

    @property
    def product_count(self) -> int:
        return len(self.eff_products)

    def position(self, p: int) -> int:
        """Zero-based position of eff-prime p in the census order."""
        i = bisect_left(self.eff_primes, p)
        if i == self.s or self.eff_primes[i] != p:
            raise KeyError(p)
        return i


def classify_residue(target: EvenTarget, r: int) -> EffClass:
    n2 = target.n2
    if isinstance(r, bool) or not isinstance(r, int) or r % 2 == 0 or not 0 < r < n2:
        raise InvalidResidue(f"residue must be odd and in (0, {n2}), got {r!r}")
    if gcd(r, n2) > 1:
        return EffClass.SharedFactor
    if r == 1:
        return EffClass.One
    if r == n2 - 1:
        return EffClass.Boundary
    return EffClass.EffPrime if is_prime(r) else EffClass.EffProduct


@lru_cache(maxsize=256)
def census(target: EvenTarget) -> Census:
    n2 = target.n2
    primes, products = [], []
    for r in range(3, n2 - 1, 2):
        if gcd(r, n2) != 1:
            continue
        (primes if is_prime(r) else products).append(r)
    return Census(
        target=target,
        eff_primes=tuple(primes),
        eff_products=tuple(products),
        s=len(primes),
        boundary_is_prime=is_prime(n2 - 1),
        half_is_prime=is_prime(target.half),
    )


def eff_partitions(target: EvenTarget) -> list[EffPartition]:
    n2 = target.n2
    return [EffPartition(r, n2 - r) for r in range(1, target.half, 2) if gcd(r, n2) == 1]

