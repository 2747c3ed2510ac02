"""Power orbits P^j mod 2N, their period, and the exact multipliers M(P, j).

Each exponent j splits the target as ``2N = (M*2N - P^j) + (P^j - (M-1)*2N)``
where ``M = floor(P^j / 2N) + 1``.  Residues use ordinary modular arithmetic;
multipliers are exact Python integers so long tables reproduce digit for digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .effnum import EffPartition, EvenTarget, factorize
from .errors import LimitExceeded, NotAUnit

__all__ = [
    "DEFAULT_MAX_J",
    "Orbit",
    "PowerStep",
    "build_orbit",
    "covers_all_partitions",
    "mult_order",
    "mult_order_linear",
    "orbit_array",
    "orbit_residues",
    "orbit_table",
    "pow_mod",
    "power_step",
]

DEFAULT_MAX_J = 10_000


@dataclass(frozen=True)
class PowerStep:
    base: int
    exponent: int
    residue: int
    multiplier: int
    low_addend: int
    high_addend: int

    def formula(self, n2: int) -> str:
        """One line in the layout of the classic periodicity table."""
        m, p, j = self.multiplier, self.base, self.exponent
        return (
            f"{n2} = ({m}*{n2} - {p}^{j}) + ({p}^{j} - {m - 1}*{n2})"
            f" = {self.low_addend} + {self.high_addend}"
        )


@dataclass(frozen=True)
class Orbit:
    target: EvenTarget
    base: int
    period: int
    steps: tuple[PowerStep, ...]
    partitions_hit: frozenset[EffPartition]
    covers_all: bool


def pow_mod(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if exp < 0:
        raise ValueError(f"exponent must be >= 0, got {exp}")
    return pow(base, exp, modulus)


def _check_base(target: EvenTarget, base: int) -> int:
    if base == 1:
        raise ValueError("base 1 has a trivial orbit and is rejected")
    if base < 1:
        raise ValueError(f"base must be a positive integer, got {base}")
    if gcd(base, target.n2) != 1:
        raise NotAUnit(base, target.n2)
    return base % target.n2


@lru_cache(maxsize=4096)
def _order(b: int, n: int, phi: int) -> int:
    if b % n == 1:
        return 1
    f = phi
    for q, _ in factorize(phi):
        while f % q == 0 and pow(b, f // q, n) == 1:
            f //= q
    return f


def mult_order(base: int, target: EvenTarget) -> int:
    """Smallest f >= 1 with base^f == 1 (mod 2N), found by stripping prime factors from phi(2N)."""
    b = _check_base(target, base)
    return _order(b, target.n2, target.totient)


def mult_order_linear(base: int, target: EvenTarget) -> int:
    """Same as :func:`mult_order` by walking the powers one at a time."""
    b = _check_base(target, base)
    n = target.n2
    x, f = b % n, 1
    while x != 1:
        x = x * b % n
        f += 1
    return f


def power_step(target: EvenTarget, base: int, j: int) -> PowerStep:
    _check_base(target, base)
    if j < 0:
        raise ValueError(f"exponent must be >= 0, got {j}")
    return _step(target.n2, base, j, base**j)


def _step(n2: int, base: int, j: int, power: int) -> PowerStep:
    multiplier, residue = divmod(power, n2)
    return PowerStep(
        base=base,
        exponent=j,
        residue=residue,
        multiplier=multiplier + 1,
        low_addend=n2 - residue,
        high_addend=residue,
    )


def orbit_table(target: EvenTarget, base: int, j_max: int, *, cap: int | None = DEFAULT_MAX_J) -> list[PowerStep]:
    """Rows j = 0..j_max with exact multipliers.

    ``cap`` bounds j_max because the exact powers grow without limit; pass
    ``cap=None`` to lift it.
    """
    _check_base(target, base)
    if j_max < 0:
        raise ValueError(f"j_max must be >= 0, got {j_max}")
    if cap is not None and j_max > cap:
        raise LimitExceeded(f"j_max {j_max} exceeds the cap of {cap}")
    rows, power = [], 1
    for j in range(j_max + 1):
        rows.append(_step(target.n2, base, j, power))
        power *= base
    return rows


_ARRAY_WALK_MIN_PERIOD = 16
_ARRAY_WALK_MAX_MODULUS = 3_000_000_000  # n**2 must fit in int64


def orbit_residues(target: EvenTarget, base: int) -> list[int]:
    """Residues P^j mod 2N for j = 0..f-1 (no multipliers)."""
    return orbit_array(target, base).tolist()


def orbit_array(target: EvenTarget, base: int) -> np.ndarray:
    """:func:`orbit_residues` as an int64 array."""
    b = _check_base(target, base)
    n = target.n2
    f = _order(b, n, target.totient)
    if f < _ARRAY_WALK_MIN_PERIOD or n > _ARRAY_WALK_MAX_MODULUS:
        return np.asarray(_powers(b, n, f), dtype=np.int64)
    # P^(i*m + j) = (P^m)^i * P^j: two short walks and one outer product
    m = isqrt(f - 1) + 1
    baby = np.asarray(_powers(b, n, m), dtype=np.int64)
    giant = np.asarray(_powers(pow(b, m, n), n, -(-f // m)), dtype=np.int64)
    return (giant[:, None] * baby[None, :] % n).ravel()[:f]


def _powers(b: int, n: int, count: int) -> list[int]:
    out, x = [], 1
    for _ in range(count):
        out.append(x)
        x = x * b % n
    return out


def covers_all_partitions(target: EvenTarget, residues: list[int]) -> bool:
    if len(residues) < target.partition_count:
        return False
    n2 = target.n2
    hit = {r if 2 * r < n2 else n2 - r for r in residues}
    return len(hit) == target.partition_count


def build_orbit(target: EvenTarget, base: int) -> Orbit:
    period = mult_order(base, target)
    steps = tuple(orbit_table(target, base, period - 1, cap=None))
    hit = frozenset(EffPartition.containing(target, st.residue) for st in steps)
    return Orbit(
        target=target,
        base=base,
        period=period,
        steps=steps,
        partitions_hit=hit,
        covers_all=len(hit) == target.partition_count,
    )
