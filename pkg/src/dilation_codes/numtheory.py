"""Exact integer and rational number theory, plus zeta and Bernoulli values.

Rationals are :class:`fractions.Fraction`, which is normalized to lowest
terms with a positive denominator at construction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable

import numpy as np

from .errors import DivergentSeries, InvalidInput

Rational = Fraction

__all__ = [
    "Rational",
    "MobiusTable",
    "gcd_tuple",
    "mobius_sieve",
    "prime_factors",
    "squarefree_divisors",
    "divisors",
    "zeta",
    "zeta_even",
    "bernoulli",
    "delta_inf_even",
]


def gcd_tuple(t: Iterable[int]) -> int:
    """Greatest common divisor of all components of ``t``."""
    t = tuple(t)
    if not t:
        raise InvalidInput("gcd of an empty tuple is undefined")
    if any(x < 1 for x in t):
        raise InvalidInput(f"components must be positive integers, got {t}")
    return reduce(math.gcd, t)


class MobiusTable:
    """Immutable table of mu(n) for 1 <= n <= limit.

    Index with ``table[n]``; ``table.values`` is a read-only int8 array whose
    slot 0 is unused (set to 0).
    """

    def __init__(self, values: np.ndarray):
        values = np.asarray(values, dtype=np.int8)
        values.setflags(write=False)
        self.values = values
        self.limit = len(values) - 1

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(f"mu({n}) outside sieve range [1, {self.limit}]")
        return int(self.values[n])

    def __len__(self) -> int:
        return self.limit

    def nonzero(self, upto: int | None = None) -> list[tuple[int, int]]:
        """(d, mu(d)) pairs with mu(d) != 0 and d <= upto."""
        upto = self.limit if upto is None else min(upto, self.limit)
        idx = np.flatnonzero(self.values[1 : upto + 1]) + 1
        return list(zip(idx.tolist(), self.values[idx].tolist()))

    def __repr__(self) -> str:
        return f"MobiusTable(limit={self.limit})"


@lru_cache(maxsize=16)
def mobius_sieve(limit: int) -> MobiusTable:
    """Sieve mu(n) for every n <= limit."""
    if limit < 1:
        raise InvalidInput("sieve limit must be >= 1")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    for p in np.flatnonzero(is_prime).tolist():
        mu[p::p] *= -1
        if p * p <= limit:
            mu[p * p :: p * p] = 0
    return MobiusTable(mu)


@lru_cache(maxsize=4096)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime factors of n in increasing order (trial division)."""
    if n < 1:
        raise InvalidInput("n must be positive")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=4096)
def squarefree_divisors(n: int) -> tuple[tuple[int, int], ...]:
    """All (e, mu(e)) with e a squarefree divisor of n."""
    out = [(1, 1)]
    for p in prime_factors(n):
        out += [(e * p, -m) for e, m in out]
    return tuple(out)


@lru_cache(maxsize=4096)
def divisors(n: int) -> tuple[int, ...]:
    """All positive divisors of n, sorted."""
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return tuple(sorted(set(small + [n // d for d in small])))


@lru_cache(maxsize=None)
def _bernoulli_table(upto: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1
    b = [Fraction(1)]
    for n in range(1, upto + 1):
        acc = sum((math.comb(n + 1, j) * b[j] for j in range(n)), Fraction(0))
        b.append(-acc / (n + 1))
    return tuple(b)


def bernoulli(index: int) -> Fraction:
    """Exact Bernoulli number B_index, with B_1 = -1/2.

    Odd indices above 1 are exactly zero and are returned without running the
    recurrence.
    """
    if index < 0:
        raise InvalidInput("Bernoulli index must be non-negative")
    if index > 1 and index % 2:
        return Fraction(0)
    # build in steps of 32 so repeated calls reuse a cached prefix
    upto = max(32, -(-index // 32) * 32)
    return _bernoulli_table(upto)[index]


def _check_k(k: int) -> None:
    if int(k) != k:
        raise InvalidInput(f"k must be an integer, got {k!r}")
    if k < 2:
        raise DivergentSeries(f"sum n^-k diverges for k = {k}")


def zeta(k: int, tolerance: float = 1e-15) -> float:
    """Riemann zeta at an integer k >= 2 from its defining series.

    The partial sum up to M - 1 is completed with the Euler-Maclaurin tail:
    the integral term M^(1-k)/(k-1), the half-term, and Bernoulli
    corrections. For real arguments the correction series envelops the
    remainder, so terms are added until the next one is below ``tolerance``.
    Results cannot be more accurate than double precision (about 1e-16).
    """
    _check_k(k)
    if tolerance <= 0:
        raise InvalidInput("tolerance must be positive")
    M = 10
    head = math.fsum(n ** -float(k) for n in range(1, M))
    tail = [M ** (1.0 - k) / (k - 1), 0.5 * M ** -float(k)]
    rising = float(k)  # k (k+1) ... (k+2j-2)
    j = 1
    while True:
        term = float(bernoulli(2 * j)) / math.factorial(2 * j) * rising * M ** (-k - 2 * j + 1.0)
        if abs(term) < tolerance or j > 60:
            break
        tail.append(term)
        rising *= (k + 2 * j - 1) * (k + 2 * j)
        j += 1
    return math.fsum([head] + tail)


def zeta_even(m: int) -> float:
    """zeta(2m) from the Bernoulli closed form."""
    return 1.0 / delta_inf_even(m)


def delta_inf_even(m: int) -> float:
    """(-1)^(m+1) 2 (2m)! / ((2 pi)^(2m) B_2m), which equals 1/zeta(2m)."""
    if m < 1:
        raise InvalidInput("m must be >= 1")
    ratio = (-1) ** (m + 1) * 2 * math.factorial(2 * m) / bernoulli(2 * m)
    try:
        return float(ratio) / (2 * math.pi) ** (2 * m)
    except OverflowError:
        log_ratio = math.log(ratio.numerator) - math.log(ratio.denominator)
        return math.exp(log_ratio - 2 * m * math.log(2 * math.pi))
