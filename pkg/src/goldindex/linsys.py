"""Complement factorizations, index-like sums and the linear systems they induce.

For an eff-prime p whose complement R = 2N - p is composite, R factors over
the eff-primes as prod p_l^k_l.  Summing k_l * J(P, l) gives the index-like Q,
and ``Q - J(P, p)`` is a multiple m * f of the period.  Collecting those rows
plus one closing row gives a linear system in the unknown indexes whose exact
rank is computed here over the rationals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .effnum import EffClass, EvenTarget, census, classify_residue, is_prime
from .errors import InternalInconsistency, MissingIndex, NotEffPrime
from .index import Form, GoldbachWitness, IndexTable, WitnessSource

__all__ = [
    "ClosingRow",
    "ComplementFactorization",
    "EquationRow",
    "EquationSystem",
    "RankResult",
    "Variant",
    "analyze_rank",
    "build_row",
    "build_system",
    "factor_complement",
]


class Variant(enum.Enum):
    Anchored = "Anchored"  # closing row J(P, a) = 1 for the base prime a
    Summed = "Summed"  # closing row sum of all J


@dataclass(frozen=True)
class ComplementFactorization:
    prime: int
    complement: int
    exponents: tuple[int, ...] | None
    is_goldbach: bool

    def factors(self, eff_primes: tuple[int, ...]) -> dict[int, int]:
        if self.exponents is None:
            return {}
        return {p: k for p, k in zip(eff_primes, self.exponents) if k}


@dataclass(frozen=True)
class EquationRow:
    target_index: int
    coefficients: tuple[int, ...]
    q_value: int
    m_value: int
    rhs: int
    prime: int = 0
    q_form: Form | None = None  # P^Q == +R (Residue) or -R (Complement) mod 2N
    congruent_mod_period: bool = True  # Q == J modulo the full multiplicative order


@dataclass(frozen=True)
class ClosingRow:
    coefficients: tuple[int, ...]
    rhs: int
    m_x: int | None = None
    sum_is_one_mod_f: bool | None = None  # Summed only: sum J == 1 (mod f)


@dataclass(frozen=True)
class RankResult:
    rank: int
    dependency: tuple[Fraction, ...] | None
    augmented_rank: int

    @property
    def consistent(self) -> bool:
        return self.rank == self.augmented_rank


@dataclass(frozen=True)
class EquationSystem:
    target: EvenTarget
    base: int
    variant: Variant
    rows: tuple[EquationRow, ...]
    closing: ClosingRow
    rank: int
    dependency: tuple[Fraction, ...] | None
    augmented_rank: int
    witnesses: tuple[GoldbachWitness, ...] = ()
    skipped: tuple[int, ...] = ()
    anchor: int | None = None

    @property
    def unknowns(self) -> int:
        return len(self.closing.coefficients)

    def matrix(self) -> list[tuple[int, ...]]:
        return [r.coefficients for r in self.rows] + [self.closing.coefficients]

    def rhs(self) -> list[int]:
        return [r.rhs for r in self.rows] + [self.closing.rhs]


def factor_complement(target: EvenTarget, p: int) -> ComplementFactorization:
    if p % 2 == 0 or not 0 < p < target.n2 or classify_residue(target, p) is not EffClass.EffPrime:
        raise NotEffPrime(p, target.n2)
    c = census(target)
    r = target.n2 - p
    if is_prime(r):
        return ComplementFactorization(prime=p, complement=r, exponents=None, is_goldbach=True)
    exps = [0] * c.s
    rest = r
    for pos, q in enumerate(c.eff_primes):
        if q * q > rest:
            break
        while rest % q == 0:
            rest //= q
            exps[pos] += 1
    if rest > 1:
        try:
            exps[c.position(rest)] += 1
        except KeyError:
            raise InternalInconsistency(f"factor {rest} of {r} is not an eff-prime of {target.n2}") from None
    i = c.position(p)
    if exps[i] != 0 or sum(exps) < 2:
        raise InternalInconsistency(f"bad factorization of {r}: {exps}")
    return ComplementFactorization(prime=p, complement=r, exponents=tuple(exps), is_goldbach=False)


def build_row(target: EvenTarget, table: IndexTable, fact: ComplementFactorization) -> EquationRow:
    if fact.is_goldbach or fact.exponents is None:
        raise ValueError(f"complement of {fact.prime} is prime; it forms no row")
    c = census(target)
    i = c.position(fact.prime)
    needed = [fact.prime] + [q for q, k in zip(c.eff_primes, fact.exponents) if k]
    absent = tuple(q for q in needed if q not in table.entries)
    if absent:
        raise MissingIndex(fact.prime, absent)
    # m is taken modulo the partition period: when -1 is a power of the base,
    # Q and J can differ by half the multiplicative order.
    f = table.partition_period
    j_i = table.entries[fact.prime].index
    q_value = sum(k * table.entries[q].index for q, k in zip(c.eff_primes, fact.exponents) if k)
    m_value, rem = divmod(q_value - j_i, f)
    if rem != 0 or m_value < 0:
        raise InternalInconsistency(
            f"index-like of {fact.prime} is {q_value}, not congruent to J = {j_i} modulo {f}"
        )
    coeffs = list(fact.exponents)
    coeffs[i] = -1
    lhs = sum(k * table.entries[q].index for q, k in zip(c.eff_primes, coeffs) if k)
    if lhs != m_value * f:
        raise InternalInconsistency(f"row for {fact.prime} not satisfied by the index vector")
    power = pow(table.base, q_value, target.n2)
    q_form = Form.Residue if power == fact.complement else Form.Complement if power == target.n2 - fact.complement else None
    return EquationRow(
        target_index=i,
        coefficients=tuple(coeffs),
        q_value=q_value,
        m_value=m_value,
        rhs=m_value * f,
        prime=fact.prime,
        q_form=q_form,
        congruent_mod_period=(q_value - j_i) % table.period == 0,
    )


def build_system(
    target: EvenTarget,
    table: IndexTable,
    variant: Variant | None = None,
) -> EquationSystem:
    """Rows for every eff-prime with a composite complement plus a closing row.

    Prime complements become witnesses instead of rows; rows that need an
    absent index are listed in ``skipped``.  The default variant is Anchored
    when the base is itself an eff-prime, Summed otherwise.
    """
    c = census(target)
    base_is_prime = table.base in table.entries and table.base < target.n2
    if variant is None:
        variant = Variant.Anchored if base_is_prime else Variant.Summed
    rows, witnesses, skipped = [], [], []
    for p in c.eff_primes:
        fact = factor_complement(target, p)
        if fact.is_goldbach:
            if p < fact.complement:
                witnesses.append(GoldbachWitness(p, fact.complement, WitnessSource.ComplementPrime))
            continue
        try:
            rows.append(build_row(target, table, fact))
        except MissingIndex:
            skipped.append(p)
    f = table.period
    anchor = None
    if variant is Variant.Anchored:
        if not base_is_prime:
            raise ValueError(f"anchored variant needs an eff-prime base, got {table.base}")
        anchor = table.base
        coeffs = [0] * c.s
        coeffs[c.position(anchor)] = 1
        closing = ClosingRow(coefficients=tuple(coeffs), rhs=table.entries[anchor].index)
    else:
        coeffs = [1 if p in table.entries else 0 for p in c.eff_primes]
        total = sum(e.index for e in table.entries.values())
        holds = f > 1 and total % f == 1
        closing = ClosingRow(
            coefficients=tuple(coeffs),
            rhs=total,
            m_x=(total - 1) // f if holds else None,
            sum_is_one_mod_f=holds,
        )
    matrix = [r.coefficients for r in rows] + [closing.coefficients]
    rhs = [r.rhs for r in rows] + [closing.rhs]
    result = analyze_rank(matrix, rhs)
    return EquationSystem(
        target=target,
        base=table.base,
        variant=variant,
        rows=tuple(rows),
        closing=closing,
        rank=result.rank,
        dependency=result.dependency,
        augmented_rank=result.augmented_rank,
        witnesses=tuple(witnesses),
        skipped=tuple(skipped),
        anchor=anchor,
    )


def _normalize(weights: list[Fraction]) -> tuple[Fraction, ...]:
    scale = lcm(*(w.denominator for w in weights))
    ints = [int(w * scale) for w in weights]
    g = 0
    for v in ints:
        g = gcd(g, v)
    lead = next(v for v in ints if v)
    sign = 1 if lead > 0 else -1
    return tuple(Fraction(sign * v // g) for v in ints)


def analyze_rank(system: EquationSystem | list, rhs: list[int] | None = None) -> RankResult:
    """Exact rank of the coefficient rows by fraction-exact Gaussian elimination.

    Accepts an :class:`EquationSystem` or a bare list of rows.  Each row is
    carried alongside a unit vector so that a row eliminated to zero yields a
    certificate: rational weights combining the original rows into the zero row.
    """
    if isinstance(system, EquationSystem):
        matrix, rhs = system.matrix(), system.rhs()
    else:
        matrix = [tuple(r) for r in system]
    n_rows = len(matrix)
    if n_rows == 0:
        return RankResult(rank=0, dependency=None, augmented_rank=0)
    n_cols = len(matrix[0])
    if rhs is None:
        rhs = [0] * n_rows
    work = [
        [Fraction(v) for v in row] + [Fraction(rhs[r])] + [Fraction(int(r == k)) for k in range(n_rows)]
        for r, row in enumerate(matrix)
    ]
    piv_r = 0
    for piv_c in range(n_cols):
        sel = next((r for r in range(piv_r, n_rows) if work[r][piv_c] != 0), None)
        if sel is None:
            continue
        work[piv_r], work[sel] = work[sel], work[piv_r]
        pivot = work[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = work[r][piv_c]
            if fr == 0:
                continue
            factor = fr / pivot
            row, prow = work[r], work[piv_r]
            for k in range(piv_c, len(row)):
                if prow[k] != 0:
                    row[k] -= factor * prow[k]
        piv_r += 1
        if piv_r == n_rows:
            break
    rank = piv_r
    augmented = rank + any(work[r][n_cols] != 0 for r in range(rank, n_rows))
    dependency = None
    if rank < n_rows:
        dependency = _normalize(work[rank][n_cols + 1:])
    return RankResult(rank=rank, dependency=dependency, augmented_rank=augmented)
