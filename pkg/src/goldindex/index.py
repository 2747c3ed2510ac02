"""Index tables J(P, p): which power of P lands on an eff-prime p (or on 2N - p).

Two eff-primes sharing an index sit in the same partition, so every shared
index is a Goldbach pair.  Discrete logs are found two ways: by walking the
orbit (``index_table``) and by baby-step giant-step (``index_of``,
``dlog_bsgs``); the tests hold them against each other.
"""

from __future__ import annotations

import enum
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

import numpy as np

from .effnum import EffClass, EvenTarget, census, classify_residue, is_prime
from .errors import InternalInconsistency, LimitExceeded, NotAUnit, NotEffPrime
from .orbit import (
    _check_base,
    _order,
    _powers,
    covers_all_partitions,
    orbit_array,
    orbit_residues,
)

__all__ = [
    "BSGS_MANY_MAX_MODULUS",
    "BSGS_MAX_MODULUS",
    "CompositeBaseProbe",
    "Form",
    "GoldbachWitness",
    "IndexEntry",
    "IndexTable",
    "WitnessSource",
    "composite_base_probe",
    "coverage_bases",
    "dlog_bsgs",
    "dlog_bsgs_many",
    "dlog_linear",
    "find_collisions",
    "index_of",
    "index_table",
]

BSGS_MAX_MODULUS = 10**12


class Form(enum.Enum):
    Residue = "Residue"  # p == P^J (mod 2N)
    Complement = "Complement"  # p == -P^J (mod 2N)


class WitnessSource(enum.Enum):
    IndexCollision = "IndexCollision"
    ComplementPrime = "ComplementPrime"
    Sieve = "Sieve"
    HalfPrime = "HalfPrime"


@dataclass(frozen=True)
class IndexEntry:
    prime: int
    index: int
    form: Form

    def reconstructs(self, base: int, n2: int) -> bool:
        r = pow(base, self.index, n2)
        return r == self.prime if self.form is Form.Residue else r == n2 - self.prime


@dataclass(frozen=True)
class IndexTable:
    """Index of every eff-prime under one base.

    ``unit_entries`` carries the J = 0 assignments of the boundary units 1 and
    2N - 1; they are informational and take no part in collisions.
    ``partition_period`` is the cycle length of the unordered partitions: the
    period itself, or half of it when -1 is a power of the base.
    """

    target: EvenTarget
    base: int
    period: int
    entries: Mapping[int, IndexEntry]
    missing: tuple[int, ...]
    unit_entries: tuple[IndexEntry, ...] = ()
    partition_period: int = 0

    def __post_init__(self):
        if not self.partition_period:
            object.__setattr__(self, "partition_period", self.period)

    def index_vector(self) -> tuple[int | None, ...]:
        c = census(self.target)
        return tuple(self.entries[p].index if p in self.entries else None for p in c.eff_primes)


@dataclass(frozen=True)
class GoldbachWitness:
    p: int
    q: int
    source: WitnessSource

    def __post_init__(self):
        if self.p > self.q:
            raise ValueError(f"witness must satisfy p <= q, got ({self.p}, {self.q})")


@dataclass(frozen=True)
class CompositeBaseProbe:
    """Outcome of using the product of all eff-primes as the base."""

    target: EvenTarget
    factor_multiset: tuple[int, ...]
    base_residue: int
    period: int
    per_prime: IndexTable
    sum_congruence_holds: bool
    probe_m_x: int | None = None
    index_sum: int | None = None
    degenerate: bool = False
    px: int = 0
    py: int = 0
    px_index: int | None = None

    @property
    def missing_count(self) -> int:
        return len(self.per_prime.missing)


def _check_value(target: EvenTarget, value: int) -> int:
    if gcd(value, target.n2) != 1:
        raise NotAUnit(value, target.n2)
    return value % target.n2


def dlog_linear(target: EvenTarget, base: int, value: int) -> int | None:
    """Smallest J in [0, f) with base^J == value, by walking the orbit."""
    b = _check_base(target, base)
    v = _check_value(target, value)
    n = target.n2
    x, j = 1, 0
    while True:
        if x == v:
            return j
        x = x * b % n
        j += 1
        if x == 1:
            return None


def dlog_bsgs(
    target: EvenTarget,
    base: int,
    value: int,
    *,
    period: int | None = None,
    max_modulus: int = BSGS_MAX_MODULUS,
) -> int | None:
    """Smallest J in [0, f) with base^J == value (mod 2N), by baby-step giant-step.

    ``period`` may be supplied when the caller already knows the order of base.
    """
    if target.n2 > max_modulus:
        raise LimitExceeded(f"modulus {target.n2} exceeds the BSGS bound {max_modulus}")
    b = _check_base(target, base)
    v = _check_value(target, value)
    n = target.n2
    f = period if period is not None else _order(b, n, target.totient)
    m = isqrt(f - 1) + 1 if f > 1 else 1
    baby = {x: j for j, x in enumerate(_powers(b, n, m))}  # distinct, since m <= f
    giant = pow(b, -m, n)
    y = v
    for i in range(m):
        j = baby.get(y)
        if j is not None:
            k = i * m + j
            return k if k < f else None
        y = y * giant % n
    return None


BSGS_MANY_MAX_MODULUS = 2**31  # keeps the int64 products in range
_DENSE_LOOKUP_MAX = 1 << 20


def dlog_bsgs_many(
    target: EvenTarget,
    base: int,
    values,
    *,
    period: int | None = None,
) -> np.ndarray:
    """:func:`dlog_bsgs` over an array of units at once; -1 marks values outside the orbit."""
    n = target.n2
    if n > BSGS_MANY_MAX_MODULUS:
        raise LimitExceeded(f"modulus {n} exceeds the batch BSGS bound {BSGS_MANY_MAX_MODULUS}")
    b = _check_base(target, base)
    v = np.asarray(values, dtype=np.int64) % n
    bad = np.gcd(v, n) != 1
    if bad.any():
        raise NotAUnit(int(v[bad][0]), n)
    f = period if period is not None else _order(b, n, target.totient)
    m = isqrt(f - 1) + 1 if f > 1 else 1
    baby_arr = np.asarray(_powers(b, n, m), dtype=np.int64)
    steps = np.asarray(_powers(pow(b, -m, n), n, m), dtype=np.int64)
    # row i holds value * base^(-i*m); the first row with a baby-step match wins
    y = steps[:, None] * v.reshape(1, -1) % n
    miss = m * m + f  # larger than any real candidate exponent
    if n <= _DENSE_LOOKUP_MAX:
        table = np.full(n, miss, dtype=np.int64)
        table[baby_arr] = np.arange(m)
        j = table[y]
    else:
        order = np.argsort(baby_arr)  # powers below f are distinct
        sorted_baby = baby_arr[order]
        at = np.minimum(np.searchsorted(sorted_baby, y), m - 1)
        j = np.where(sorted_baby[at] == y, order[at], miss)
    k = (j + (np.arange(m) * m)[:, None]).min(axis=0)
    out = np.where(k < f, k, -1).reshape(v.shape)
    return out


def _pick(j_res: int | None, j_comp: int | None) -> tuple[int, Form] | None:
    if j_res is None and j_comp is None:
        return None
    if j_comp is None or (j_res is not None and j_res <= j_comp):
        return j_res, Form.Residue
    return j_comp, Form.Complement


def index_of(target: EvenTarget, base: int, p: int) -> IndexEntry | None:
    b = _check_base(target, base)
    if p % 2 == 0 or not 0 < p < target.n2 or classify_residue(target, p) is not EffClass.EffPrime:
        raise NotEffPrime(p, target.n2)
    f = _order(b, target.n2, target.totient)
    picked = _pick(
        dlog_bsgs(target, b, p, period=f),
        dlog_bsgs(target, b, target.n2 - p, period=f),
    )
    return None if picked is None else IndexEntry(p, *picked)


class _EntryMap(Mapping):
    """Read-only ``prime -> IndexEntry`` view over parallel arrays.

    Entries are materialized on first per-key access, so bulk consumers that
    only need :meth:`arrays` never pay for building them.
    """

    __slots__ = ("_dict", "_index", "_primes", "_residue")

    def __init__(self, primes: np.ndarray, index: np.ndarray, residue: np.ndarray):
        self._primes, self._index, self._residue = primes, index, residue
        self._dict: dict[int, IndexEntry] | None = None

    def _built(self) -> dict[int, IndexEntry]:
        if self._dict is None:
            forms = (Form.Complement, Form.Residue)
            self._dict = {
                p: IndexEntry(p, j, forms[r])
                for p, j, r in zip(self._primes.tolist(), self._index.tolist(), self._residue.tolist())
            }
        return self._dict

    def __getitem__(self, p: int) -> IndexEntry:
        return self._built()[p]

    def __contains__(self, p: object) -> bool:
        return p in self._built()

    def __iter__(self):
        return iter(self._built())

    def __len__(self) -> int:
        return len(self._primes)

    def __repr__(self) -> str:
        return repr(self._built())

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(primes, indexes, is_residue) for the present entries, in increasing prime order."""
        return self._primes, self._index, self._residue


@lru_cache(maxsize=256)
def _prime_array(target: EvenTarget) -> np.ndarray:
    return np.asarray(census(target).eff_primes, dtype=np.int64)


@lru_cache(maxsize=256)
def _lookup_values(target: EvenTarget) -> np.ndarray:
    """Eff-primes followed by their complements."""
    primes = _prime_array(target)
    return np.concatenate((primes, target.n2 - primes))


_DENSE_POSITION_MAX = 1 << 22


def _positions(res: np.ndarray, n: int, values: np.ndarray, absent: int) -> np.ndarray:
    """Exponent at which each value occurs in the orbit ``res``, or ``absent``."""
    if n <= _DENSE_POSITION_MAX:
        pos = np.full(n, absent, dtype=np.int64)
        pos[res] = np.arange(len(res))
        return pos[values]
    order = np.argsort(res)
    sres = res[order]
    at = np.minimum(np.searchsorted(sres, values), len(sres) - 1)
    return np.where(sres[at] == values, order[at], absent)


def _table_from_residues(target: EvenTarget, base: int, res: np.ndarray) -> IndexTable:
    n2 = target.n2
    f = len(res)
    primes = _prime_array(target)
    both = _positions(res, n2, _lookup_values(target), f)  # f marks "not in the orbit"
    j_res, j_comp = both[: len(primes)], both[len(primes):]
    index = np.minimum(j_res, j_comp)
    present = index < f
    use_res = j_res <= j_comp  # Residue wins ties, matching _pick
    if present.all():
        entries, missing = _EntryMap(primes, index, use_res), ()
    else:
        keep = np.flatnonzero(present)
        entries = _EntryMap(primes[keep], index[keep], use_res[keep])
        missing = tuple(primes[~present].tolist())
    units = (IndexEntry(1, 0, Form.Residue), IndexEntry(n2 - 1, 0, Form.Complement))
    return IndexTable(
        target=target,
        base=base,
        period=f,
        partition_period=f // 2 if f % 2 == 0 and res[f // 2] == n2 - 1 else f,
        entries=entries,
        missing=missing,
        unit_entries=units,
    )


def index_table(target: EvenTarget, base: int) -> IndexTable:
    return _table_from_residues(target, base, orbit_array(target, base))


def find_collisions(table: IndexTable) -> list[GoldbachWitness]:
    """Goldbach pairs read off eff-primes that share an index."""
    n2 = table.target.n2
    by_index: dict[int, list[int]] = {}
    for entry in table.entries.values():
        by_index.setdefault(entry.index, []).append(entry.prime)
    out = []
    for primes in by_index.values():
        primes.sort()
        for a in range(len(primes)):
            for b in range(a + 1, len(primes)):
                p, q = primes[a], primes[b]
                if p + q != n2 or not (is_prime(p) and is_prime(q)):
                    raise InternalInconsistency(f"index collision ({p}, {q}) is not a prime pair of {n2}")
                if table.entries[p].form is table.entries[q].form:
                    raise InternalInconsistency(f"index collision ({p}, {q}) with equal forms")
                out.append(GoldbachWitness(p, q, WitnessSource.IndexCollision))
    out.sort(key=lambda w: w.p)
    return out


def coverage_bases(target: EvenTarget, search_limit: int | None = None) -> list[int]:
    """Eff-numbers whose orbit reaches every eff-partition, in increasing order.

    ``search_limit`` caps how many candidate bases are examined.
    """
    c = census(target)
    candidates = sorted(c.eff_primes + c.eff_products)
    if search_limit is not None:
        candidates = candidates[:search_limit]
    n, phi, F = target.n2, target.totient, target.partition_count
    found = []
    for b in candidates:
        if _order(b, n, phi) < F:
            continue
        if covers_all_partitions(target, orbit_residues(target, b)):
            found.append(b)
    return found


def first_coverage_base(target: EvenTarget) -> int | None:
    c = census(target)
    n, phi, F = target.n2, target.totient, target.partition_count
    for b in sorted(c.eff_primes + c.eff_products):
        if _order(b, n, phi) >= F and covers_all_partitions(target, orbit_residues(target, b)):
            return b
    return None


def composite_base_probe(target: EvenTarget) -> CompositeBaseProbe:
    """Index the eff-primes against P = product of all eff-primes (reduced mod 2N).

    Reports whether the indexes sum to 1 modulo the period; it does not assume so.
    A product congruent to 1 is recorded as ``degenerate`` rather than raised.
    """
    c = census(target)
    if c.s < 1:
        raise ValueError(f"{target.n2} has no eff-primes")
    n2 = target.n2
    residue = prod(c.eff_primes) % n2
    if residue == 1:
        table = IndexTable(
            target=target, base=residue, period=1, entries={}, missing=c.eff_primes,
            unit_entries=(IndexEntry(1, 0, Form.Residue), IndexEntry(n2 - 1, 0, Form.Complement)),
        )
        return CompositeBaseProbe(
            target=target, factor_multiset=c.eff_primes, base_residue=1, period=1, per_prime=table,
            sum_congruence_holds=False, degenerate=True, px=n2 - 1, py=1,
        )
    table = _table_from_residues(target, residue, orbit_array(target, residue))
    f = table.period
    holds, m_x, total = False, None, None
    if not table.missing:
        total = sum(e.index for e in table.entries.values())
        holds = f > 1 and total % f == 1
        if holds:
            m_x = (total - 1) // f
    # P_x = 2MN - P and P_y = P - 2(M-1)N; P_x is reached by P^1 in complement form.
    px, py = n2 - residue, residue
    px_index = 1 if f > 1 else None
    return CompositeBaseProbe(
        target=target,
        factor_multiset=c.eff_primes,
        base_residue=residue,
        period=f,
        per_prime=table,
        sum_congruence_holds=holds,
        probe_m_x=m_x,
        index_sum=total,
        px=px,
        py=py,
        px_index=px_index,
    )


