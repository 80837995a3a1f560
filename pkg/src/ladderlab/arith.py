"""Integer-side counting functions.

Divisor counts d(n), their summatory function via the hyperbola method,
and exact prime counting by segmented sieve. Everything here is exact
64-bit integer arithmetic; the analytic side of the package only meets
these through ratio reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InfeasibleError

PRIME_PI_LIMIT = 100_000_000
_SEGMENT = 1 << 20


def divisor_count(n: int) -> int:
    """Number of positive divisors, by trial-division factorization."""
    n = int(n)
    if n < 1:
        raise DomainError("divisor_count requires n >= 1")
    out = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out *= e + 1
        p += 1 if p == 2 else 2
    if m > 1:
        out *= 2
    return out


@dataclass
class DivisorTable:
    """d(n) for 1..limit, sieved in one pass."""

    limit: int
    d: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.limit < 1:
            raise DomainError("DivisorTable limit must be >= 1")
        d = np.zeros(self.limit + 1, dtype=np.int64)
        for i in range(1, self.limit + 1):
            d[i::i] += 1
        self.d = d

    def count(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise DomainError(f"n={n} outside table range 1..{self.limit}")
        return int(self.d[n])


def dirichlet_D(x: float) -> int:
    """Summatory divisor function sum_{n<=x} d(n), hyperbola method.

    Exact in O(sqrt x); constant on [N, N+1) by construction.
    """
    if x < 0:
        raise DomainError("dirichlet_D requires x >= 0")
    N = int(math.floor(x))
    if N < 1:
        return 0
    r = math.isqrt(N)
    ns = np.arange(1, r + 1, dtype=np.int64)
    return int(2 * np.sum(N // ns) - r * r)


def _base_primes(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve)


def prime_pi(x: float) -> int:
    """Exact count of primes <= x, segmented sieve, supported to 1e8."""
    if x < 0:
        raise DomainError("prime_pi requires x >= 0")
    if x > PRIME_PI_LIMIT:
        raise InfeasibleError(f"prime_pi supported only to {PRIME_PI_LIMIT:.0e}")
    N = int(math.floor(x))
    if N < 2:
        return 0
    base = _base_primes(math.isqrt(N))
    count = 0
    lo = 2
    while lo <= N:
        hi = min(lo + _SEGMENT, N + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                continue
            seg[start - lo:: p] = False
        if lo <= 1:
            seg[: 2 - lo] = False
        count += int(np.count_nonzero(seg))
        lo = hi
    return count
