"""Brute-force reference implementations.

Nothing here imports goldindex; every value is recomputed from definitions
by the slowest obvious method so the tests compare two independent routes.
"""

from __future__ import annotations

from math import gcd

import numpy as np


def is_prime_td(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_flags(limit: int) -> np.ndarray:
    """Primality of 0..limit: each n is trial-divided by every prime up to sqrt(limit), all n at once."""
    n = np.arange(limit + 1)
    flags = n >= 2
    for d in range(2, int(limit**0.5) + 1):
        if is_prime_td(d):
            flags &= (n % d != 0) | (n == d)
    return flags


def units(n2: int) -> list[int]:
    return [r for r in range(1, n2) if gcd(r, n2) == 1]


def totient(n2: int) -> int:
    return len(units(n2))


def eff_primes(n2: int) -> list[int]:
    return [r for r in range(3, n2 - 1, 2) if gcd(r, n2) == 1 and is_prime_td(r)]


def eff_products(n2: int) -> list[int]:
    return [r for r in range(3, n2 - 1, 2) if gcd(r, n2) == 1 and not is_prime_td(r)]


def order_linear(b: int, n: int) -> int:
    x, f = b % n, 1
    while x != 1:
        x = x * b % n
        f += 1
    return f


def orbit(b: int, n: int) -> list[int]:
    out, x = [], 1
    while True:
        out.append(x)
        x = x * b % n
        if x == 1:
            return out


def dlog_linear(b: int, v: int, n: int) -> int | None:
    for j, x in enumerate(orbit(b, n)):
        if x == v % n:
            return j
    return None


def index_brute(b: int, p: int, n: int) -> tuple[int, str] | None:
    """Smallest J with b^J == +p or -p (mod n); Residue preferred at equal J."""
    for j, x in enumerate(orbit(b, n)):
        if x == p:
            return j, "Residue"
        if x == n - p:
            return j, "Complement"
    return None


def covers_all(b: int, n: int) -> bool:
    hit = {min(x, n - x) for x in orbit(b, n)}
    return len(hit) == totient(n) // 2


def goldbach_pairs(n2: int) -> list[tuple[int, int]]:
    return [(p, n2 - p) for p in range(3, n2 // 2 + 1, 2) if is_prime_td(p) and is_prime_td(n2 - p)]


def group_tables(n2: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Linear-scan order and discrete-log tables for every unit base of n2 at once.

    Returns (bases, orders, dlog, powers): ``dlog[i, v]`` is the smallest j with
    bases[i]^j == v (or -1) and ``powers[i, j]`` is bases[i]^j mod n2.
    """
    u = np.array(units(n2), dtype=np.int64)
    k = len(u)
    dlog = np.full((k, n2), -1, dtype=np.int64)
    orders = np.zeros(k, dtype=np.int64)
    rows = np.arange(k)
    x = np.ones(k, dtype=np.int64)
    live = np.ones(k, dtype=bool)
    walk = []  # walk[j] holds every base raised to j
    for j in range(k + 1):
        walk.append(x)
        dlog[rows[live], x[live]] = j  # powers below the order are distinct
        x = x * u % n2
        closed = live & (x == 1)
        orders[closed] = j + 1
        live &= ~closed
        if not live.any():
            break
    powers = np.stack(walk, axis=1)
    return u, orders, dlog, powers
