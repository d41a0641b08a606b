"""Sieved arithmetic functions and the divisor-pair coefficient table.

Two small data objects drive the fast counting engine:

  * ArithTable -- Euler totient phi(n) and Moebius mu(n) for n <= limit,
    filled by a single linear sieve pass.
  * RTable     -- r(n) = #{(x, y) : xy = n, 1 <= |x| <= X, 1 <= |y| <= Y}
    for 1 <= n <= X*Y.  For n >= 1 the two factors share a sign, so
    r(n) = 2 * #{d | n : d <= X, n/d <= Y}; r(-n) = r(n) is resolved at
    call sites and r(0) is never defined.

Both tables are built once, single threaded, and are immutable afterwards;
concurrent readers are safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceLimitError

# Largest X*Y an RTable will allocate (int64 entries; ~160 MB at the cap).
R_TABLE_MAX_ENTRIES = 20_000_000


@dataclass(frozen=True)
class ArithTable:
    """Totient and Moebius values for 1..limit (index 0 is unused)."""

    limit: int
    phi: np.ndarray = field(repr=False)
    mu: np.ndarray = field(repr=False)

    def phi_of(self, n: int) -> int:
        return int(self.phi[n])

    def mu_of(self, n: int) -> int:
        return int(self.mu[n])


@dataclass(frozen=True)
class RTable:
    """Divisor-pair counts r(n) for the box |x| <= X, |y| <= Y."""

    X: int
    Y: int
    r: np.ndarray = field(repr=False)  # r[n] for n = 0..X*Y, r[0] = 0

    def r_of(self, n: int) -> int:
        """r(n) with the evenness convention r(-n) = r(n); 0 outside the support."""
        n = abs(n)
        if n == 0 or n > self.X * self.Y:
            return 0
        return int(self.r[n])


def build_arith_tables(limit: int) -> ArithTable:
    """Fill phi and mu up to ``limit`` with a linear (smallest-prime-factor) sieve.

    Satisfies sum_{d|n} phi(d) = n and sum_{d|n} mu(d) = [n = 1] for every
    n <= limit; both functions are multiplicative on coprime arguments.
    """
    if limit < 1:
        raise ValueError("limit must be a positive integer")
    phi = np.zeros(limit + 1, dtype=np.int64)
    mu = np.zeros(limit + 1, dtype=np.int64)
    phi[1] = 1
    mu[1] = 1
    primes: list[int] = []
    for n in range(2, limit + 1):
        if phi[n] == 0:  # n is prime
            primes.append(n)
            phi[n] = n - 1
            mu[n] = -1
        for p in primes:
            m = n * p
            if m > limit:
                break
            if n % p == 0:
                phi[m] = phi[n] * p
                mu[m] = 0
                break
            phi[m] = phi[n] * (p - 1)
            mu[m] = -mu[n]
    phi.setflags(write=False)
    mu.setflags(write=False)
    return ArithTable(limit=limit, phi=phi, mu=mu)


def r_direct(n: int, X: int, Y: int) -> int:
    """r(n) by divisor enumeration up to sqrt(n): 2 * #{d | n : d <= X, n/d <= Y}."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    count = 0
    for d in range(1, math.isqrt(n) + 1):
        if n % d:
            continue
        e = n // d
        if d <= X and e <= Y:
            count += 1
        if d != e and e <= X and d <= Y:
            count += 1
    return 2 * count


def build_r_table(X: int, Y: int) -> RTable:
    """Tabulate r(n) for 1 <= n <= X*Y.

    Fast fill: for each d <= X add 2 to every multiple d*m with m <= Y.
    Entries are 64-bit; the whole table is refused (never truncated) when
    X*Y exceeds the memory budget.
    """
    if X < 1 or Y < 1:
        raise ValueError("box bounds must be positive integers")
    total = X * Y
    if total > R_TABLE_MAX_ENTRIES:
        raise ResourceLimitError(
            f"r-table with X*Y = {total} entries exceeds the budget of {R_TABLE_MAX_ENTRIES}"
        )
    r = np.zeros(total + 1, dtype=np.int64)
    for d in range(1, X + 1):
        r[d : d * Y + 1 : d] += 2
    r.setflags(write=False)
    return RTable(X=X, Y=Y, r=r)
