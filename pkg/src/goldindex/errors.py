"""Exception types shared across the package."""

from __future__ import annotations

from math import gcd


class GoldIndexError(Exception):
    """Base class for every error raised by goldindex."""


class InvalidTarget(GoldIndexError, ValueError):
    """The even target is odd, too small, or otherwise unusable."""


class InvalidResidue(GoldIndexError, ValueError):
    """A residue argument is even or outside (0, 2N)."""


class NotAUnit(GoldIndexError, ValueError):
    """The base (or value) shares a factor with 2N, so no period or index exists."""

    def __init__(self, value: int, n2: int):
        self.value = value
        self.n2 = n2
        super().__init__(f"{value} is not a unit modulo {n2} (gcd = {gcd(value, n2)})")


class NotEffPrime(GoldIndexError, ValueError):
    def __init__(self, value: int, n2: int):
        self.value = value
        self.n2 = n2
        super().__init__(f"{value} is not an eff-prime of {n2}")


class MissingIndex(GoldIndexError):
    """An equation row needs the index of a prime that is not in the orbit."""

    def __init__(self, prime: int, missing: tuple[int, ...]):
        self.prime = prime
        self.missing = missing
        super().__init__(f"row for {prime} needs indexes of {list(missing)}, absent from the orbit")


class DegenerateBase(GoldIndexError):
    """The composite base reduces to 1 modulo 2N."""


class InternalInconsistency(GoldIndexError, AssertionError):
    """A computed object failed its own verification; this is a defect."""


class LimitExceeded(GoldIndexError, ValueError):
    """A configured resource bound would be exceeded."""


class GoldbachCounterexample(GoldIndexError):
    """The sieve found no prime pair for some even number.

    Carries the record that was produced so callers can persist it.
    """

    def __init__(self, record):
        self.record = record
        super().__init__(f"no Goldbach partition found for {record.n2}")

