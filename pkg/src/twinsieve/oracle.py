"""Independent ground truth: classical primality, factorization, twin counting.

Nothing here knows about the quadratic forms or the exclusion sieve; it is
used only to check them.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import ArithmeticRangeError, DomainError, ResourceError

U64_MAX = 2**64 - 1
TRIAL_DIVISION_BELOW = 1 << 20
FACTORIZE_MAX = 10**12
# Deterministic for every n < 3.3e24, so for all 64-bit inputs.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DEFAULT_MEMORY_BUDGET = 1 << 30


def _trial_is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0 or m % 3 == 0:
        return False
    f = 5
    while f * f <= m:
        if m % f == 0 or m % (f + 2) == 0:
            return False
        f += 6
    return True


def _strong_probable_prime(m: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, m)
    if x == 1 or x == m - 1:
        return True
    for _ in range(s - 1):
        x = x * x % m
        if x == m - 1:
            return True
    return False


def oracle_is_prime(m: int) -> bool:
    """Exact primality for any 0 <= m < 2**64."""
    if m < 0 or m > U64_MAX:
        raise ArithmeticRangeError(f"{m} is outside the unsigned 64-bit range")
    if m < TRIAL_DIVISION_BELOW:
        return _trial_is_prime(m)
    if m % 2 == 0:
        return False
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_strong_probable_prime(m, a, d, s) for a in MR_BASES)


def factorize(m: int) -> Counter:
    """Prime factorization of ``m`` as a Counter {prime: multiplicity}.

    Trial division by 2, 3 and then 6k +/- 1, so limited to m <= 10**12.
    """
    if m < 2:
        raise DomainError(f"factorize needs m >= 2, got {m}")
    if m > FACTORIZE_MAX:
        raise ArithmeticRangeError(f"{m} exceeds the trial-division budget {FACTORIZE_MAX}")
    factors = Counter()
    for p in (2, 3):
        while m % p == 0:
            factors[p] += 1
            m //= p
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            while m % p == 0:
                factors[p] += 1
                m //= p
        f += 6
    if m > 1:
        factors[m] += 1
    return factors


def prime_mask(upto: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> np.ndarray:
    """Boolean array ``is_prime[0..upto]`` by the sieve of Eratosthenes."""
    if upto + 1 > memory_budget:
        raise ResourceError(f"sieving to {upto} needs {upto + 1} bytes, budget is {memory_budget}")
    mask = np.ones(upto + 1, dtype=np.bool_)
    mask[:2] = False
    for p in range(2, math.isqrt(upto) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return mask


def twin_flags(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> np.ndarray:
    """``flags[n-1]`` is True iff 6n-1 and 6n+1 are both prime, for n in 1..limit."""
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    mask = prime_mask(6 * limit + 1, memory_budget)
    n = np.arange(1, limit + 1, dtype=np.int64)
    return mask[6 * n - 1] & mask[6 * n + 1]


def oracle_twin_count(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> int:
    return int(np.count_nonzero(twin_flags(limit, memory_budget)))


@dataclass
class OracleReport:
    limit: int
    twin_count: int
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_twin_flags(limit: int, sieve_flags, max_samples: int | None = None) -> OracleReport:
    """Compare per-index twin verdicts from some other method against the oracle.

    ``sieve_flags[n-1]`` is that method's verdict for index n. Mismatches are
    ``(n, sieve_verdict, oracle_verdict)`` triples in increasing n.
    """
    truth = twin_flags(limit)
    sieve_flags = np.asarray(sieve_flags, dtype=np.bool_)
    if sieve_flags.shape != truth.shape:
        raise DomainError(f"expected {truth.shape[0]} verdicts, got {sieve_flags.shape[0]}")
    bad = np.flatnonzero(sieve_flags != truth)
    if max_samples is not None:
        bad = bad[:max_samples]
    mismatches = [(int(i) + 1, bool(sieve_flags[i]), bool(truth[i])) for i in bad]
    return OracleReport(limit, int(np.count_nonzero(truth)), mismatches)
