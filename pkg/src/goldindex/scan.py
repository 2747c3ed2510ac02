"""Sieve-backed Goldbach oracle and range auditor.

The sieve is independent of the index machinery, so every pair the index
method reports can be confirmed against it.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .effnum import EvenTarget, census, factorize
from .errors import GoldbachCounterexample, InvalidTarget, LimitExceeded
from .index import (
    GoldbachWitness,
    WitnessSource,
    composite_base_probe,
    find_collisions,
    index_table,
)
from .orbit import _order, covers_all_partitions, orbit_residues

__all__ = [
    "DEFAULT_SIEVE_LIMIT",
    "FULL_AUDIT_LIMIT",
    "AuditRecord",
    "AuditSummary",
    "PrimeSieve",
    "audit_claims",
    "audit_record",
    "goldbach_witness_sieve",
    "iter_scan",
    "scan_range",
    "sieve",
]

log = logging.getLogger(__name__)

DEFAULT_SIEVE_LIMIT = 10**8
FULL_AUDIT_LIMIT = 10**6


class PrimeSieve:
    """Sieve of Eratosthenes over the odd numbers, one bit per odd number."""

    def __init__(self, limit: int, *, max_limit: int = DEFAULT_SIEVE_LIMIT):
        if limit < 0:
            raise ValueError(f"sieve limit must be >= 0, got {limit}")
        if limit > max_limit:
            raise LimitExceeded(f"sieve limit {limit} exceeds the configured bound {max_limit}")
        self.limit = limit
        odd = np.ones((limit + 1) // 2, dtype=bool)  # slot i stands for 2i + 1 <= limit
        odd[:1] = False
        for i in range(1, len(odd)):
            p = 2 * i + 1
            if p * p > limit:
                break
            if odd[i]:
                odd[p * p // 2 :: p] = False
        self._bits = np.packbits(odd)
        self._odd = odd.tobytes()  # unpacked mirror for fast scalar queries
        self._pi = None

    def __contains__(self, n: int) -> bool:
        return self.is_prime(n)

    def is_prime(self, n: int) -> bool:
        if n < 0 or n > self.limit:
            raise LimitExceeded(f"{n} is outside the sieve range [0, {self.limit}]")
        if n % 2 == 0:
            return n == 2
        i = n >> 1
        return bool((self._bits[i >> 3] >> (7 - (i & 7))) & 1)

    def primes(self) -> np.ndarray:
        odd = np.unpackbits(self._bits)[: (self.limit + 1) // 2].astype(bool)
        out = 2 * np.flatnonzero(odd) + 1
        return np.concatenate(([2], out)) if self.limit >= 2 else out

    def count(self) -> int:
        return len(self.primes())

    def pi(self, x: int) -> int:
        """Number of primes <= x."""
        if x < 2:
            return 0
        if self._pi is None:
            odd = np.unpackbits(self._bits)[: (self.limit + 1) // 2]
            self._pi = np.cumsum(odd, dtype=np.int64)
        return int(self._pi[(x - 1) // 2]) + 1 if x >= 3 else 1


def sieve(limit: int, *, max_limit: int = DEFAULT_SIEVE_LIMIT) -> PrimeSieve:
    return PrimeSieve(limit, max_limit=max_limit)


def goldbach_witness_sieve(target: EvenTarget, primes: PrimeSieve) -> GoldbachWitness | None:
    """Smallest prime p <= N with 2N - p prime, or None (a counterexample)."""
    n2 = target.n2
    if n2 > primes.limit:
        raise LimitExceeded(f"sieve covers up to {primes.limit}, target is {n2}")
    odd = primes._odd
    for p in range(3, target.half + 1, 2):
        if odd[p >> 1] and odd[(n2 - p) >> 1]:
            source = WitnessSource.HalfPrime if p == n2 - p else WitnessSource.Sieve
            return GoldbachWitness(p, n2 - p, source)
    return None


@dataclass(frozen=True)
class ProbeSummary:
    period: int
    missing_count: int
    sum_congruence_holds: bool


@dataclass(frozen=True)
class AuditRecord:
    n2: int
    s: int
    product_count: int
    has_sieve_witness: bool
    smallest_witness: tuple[int, int] | None
    coverage_base_found: int | None = None
    collision_witness_count: int = 0
    composite_probe_summary: ProbeSummary | None = None
    paper_criterion_mismatch: bool = False
    collision_witnesses: tuple[tuple[int, int], ...] = ()
    full: bool = False

    @property
    def pigeonhole(self) -> bool:
        """More eff-primes than eff-products, which forces a prime pair."""
        return self.s > self.product_count


def _fast_counts(n2: int, primes: PrimeSieve) -> tuple[int, int]:
    # eff-primes: odd primes below 2N - 1 that do not divide 2N
    odd_divisors = sum(1 for p, _ in factorize(n2) if p != 2)
    s = primes.pi(n2 - 2) - 1 - odd_divisors
    phi = EvenTarget.of(n2).totient
    return s, phi - s - 2


def _coverage_scan(target: EvenTarget) -> tuple[int | None, bool]:
    """First coverage base and whether any base breaks the 'f = F iff full coverage' rule."""
    c = census(target)
    n, phi, F = target.n2, target.totient, target.partition_count
    first, mismatch = None, False
    for b in sorted(c.eff_primes + c.eff_products):
        f = _order(b, n, phi)
        covers = f >= F and covers_all_partitions(target, orbit_residues(target, b))
        if covers and first is None:
            first = b
        if (f == F) != covers:
            mismatch = True
        if first is not None and mismatch:
            break
    return first, mismatch


def audit_record(n2: int, primes: PrimeSieve, full: bool = False) -> AuditRecord:
    target = EvenTarget.of(n2)
    w = goldbach_witness_sieve(target, primes)
    pair = None if w is None else (w.p, w.q)
    if not full:
        s, products = _fast_counts(n2, primes)
        return AuditRecord(n2=n2, s=s, product_count=products, has_sieve_witness=w is not None, smallest_witness=pair)
    c = census(target)
    base, mismatch = _coverage_scan(target)
    collisions: tuple[tuple[int, int], ...] = ()
    if base is not None:
        collisions = tuple((x.p, x.q) for x in find_collisions(index_table(target, base)))
    probe = composite_base_probe(target)
    return AuditRecord(
        n2=n2,
        s=c.s,
        product_count=c.product_count,
        has_sieve_witness=w is not None,
        smallest_witness=pair,
        coverage_base_found=base,
        collision_witness_count=len(collisions),
        composite_probe_summary=ProbeSummary(probe.period, probe.missing_count, probe.sum_congruence_holds),
        paper_criterion_mismatch=mismatch,
        collision_witnesses=collisions,
        full=True,
    )


_worker_sieve: PrimeSieve | None = None


def _init_worker(limit: int) -> None:
    global _worker_sieve
    _worker_sieve = PrimeSieve(limit, max_limit=max(limit, DEFAULT_SIEVE_LIMIT))


def _worker_chunk(args: tuple[list[int], bool]) -> list[AuditRecord]:
    values, full = args
    return [audit_record(n2, _worker_sieve, full) for n2 in values]


def _check_range(lo: int, hi: int) -> None:
    if lo % 2 or hi % 2:
        raise InvalidTarget(f"range bounds must be even, got [{lo}, {hi}]")
    if lo < 8 or lo > hi:
        raise InvalidTarget(f"range must satisfy 8 <= lo <= hi, got [{lo}, {hi}]")


def iter_scan(
    lo: int,
    hi: int,
    *,
    full: bool = False,
    primes: PrimeSieve | None = None,
    jobs: int = 1,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    full_limit: int = FULL_AUDIT_LIMIT,
    skip: Iterable[int] = (),
    chunk: int = 256,
) -> Iterator[AuditRecord]:
    """Yield one record per even number in [lo, hi], in increasing order.

    Values listed in ``skip`` are not computed (the caller already has them).
    If some even number has no prime pair, its record is yielded and then
    :class:`GoldbachCounterexample` is raised.
    """
    _check_range(lo, hi)
    if hi > sieve_limit:
        raise LimitExceeded(f"range end {hi} exceeds the sieve limit {sieve_limit}")
    if full and hi > full_limit:
        raise LimitExceeded(f"full audits are limited to 2N <= {full_limit}; use the sieve-only mode")
    skipped = set(skip)
    todo = [n for n in range(lo, hi + 1, 2) if n not in skipped]
    if jobs <= 1 or len(todo) < 2 * chunk:
        primes = primes if primes is not None and primes.limit >= hi else PrimeSieve(hi, max_limit=sieve_limit)
        batches: Iterable[list[AuditRecord]] = ([audit_record(n, primes, full)] for n in todo)
    else:
        pool = ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(hi,))
        parts = [(todo[i : i + chunk], full) for i in range(0, len(todo), chunk)]
        batches = _pooled(pool, parts)
    for batch in batches:
        for rec in batch:
            yield rec
            if not rec.has_sieve_witness:
                raise GoldbachCounterexample(rec)


def _pooled(pool: ProcessPoolExecutor, parts: list) -> Iterator[list[AuditRecord]]:
    with pool:
        yield from pool.map(_worker_chunk, parts)


def scan_range(lo: int, hi: int, **options) -> list[AuditRecord]:
    return list(iter_scan(lo, hi, **options))


@dataclass(frozen=True)
class AuditSummary:
    lo: int
    hi: int
    count: int
    witness_count: int
    full: bool
    coverage_count: int = 0
    no_coverage: tuple[int, ...] = ()
    criterion_mismatch_count: int = 0
    pigeonhole_count: int = 0
    pigeonhole: tuple[int, ...] = field(default=(), repr=False)
    collision_witness_total: int = 0
    unconfirmed_collisions: tuple[tuple[int, int, int], ...] = ()
    covered_without_collision: tuple[int, ...] = ()
    no_coverage_probes: tuple[tuple[int, ProbeSummary], ...] = field(default=(), repr=False)

    @property
    def witness_rate(self) -> float:
        return self.witness_count / self.count if self.count else 1.0

    @property
    def coverage_fraction(self) -> float:
        return self.coverage_count / self.count if self.count else 0.0

    @property
    def collisions_sound(self) -> bool:
        return not self.unconfirmed_collisions


def summarize(records: Iterable[AuditRecord], primes: PrimeSieve, lo: int, hi: int) -> AuditSummary:
    """Second pass over finished records; every collision pair is re-checked on the sieve."""
    records = list(records)
    full = bool(records) and all(r.full for r in records)
    unconfirmed = []
    for r in records:
        for p, q in r.collision_witnesses:
            if p + q != r.n2 or not (primes.is_prime(p) and primes.is_prime(q)):
                unconfirmed.append((r.n2, p, q))
    covered = [r for r in records if r.coverage_base_found is not None]
    no_cov = [r for r in records if r.full and r.coverage_base_found is None]
    pig = tuple(r.n2 for r in records if r.pigeonhole)
    return AuditSummary(
        lo=lo,
        hi=hi,
        count=len(records),
        witness_count=sum(r.has_sieve_witness for r in records),
        full=full,
        coverage_count=len(covered),
        no_coverage=tuple(r.n2 for r in no_cov),
        criterion_mismatch_count=sum(r.paper_criterion_mismatch for r in records),
        pigeonhole_count=len(pig),
        pigeonhole=pig,
        collision_witness_total=sum(r.collision_witness_count for r in records),
        unconfirmed_collisions=tuple(unconfirmed),
        covered_without_collision=tuple(r.n2 for r in covered if r.collision_witness_count == 0),
        no_coverage_probes=tuple((r.n2, r.composite_probe_summary) for r in no_cov),
    )


def audit_claims(lo: int, hi: int, *, full: bool = True, **options) -> AuditSummary:
    """Full audit of [lo, hi] followed by the aggregate summary."""
    records = scan_range(lo, hi, full=full, **options)
    primes = options.get("primes") or PrimeSieve(hi, max_limit=options.get("sieve_limit", DEFAULT_SIEVE_LIMIT))
    return summarize(records, primes, lo, hi)

