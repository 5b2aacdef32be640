"""Primality of m = 6n +/- 1 decided only by form representability.

Also checks two structural facts the forms rest on: the parity of the number
of prime factors congruent to 5 mod 6, and that interleaving 6n-1 and 6n+1
gives an increasing sequence containing every prime from 5 on.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import oracle
from .errors import DomainError
from .forms import (
    DivisorPair,
    FormKind,
    FormWitness,
    find_witness_minus_side,
    find_witness_plus_side,
    find_witnesses,
    witness_to_divisors,
)


class Verdict(enum.Enum):
    PRIME = "Prime"
    COMPOSITE = "Composite"


@dataclass(frozen=True)
class Classification:
    m: int
    verdict: Verdict
    witness: Optional[FormWitness] = None
    divisors: Optional[DivisorPair] = None

    @property
    def is_prime(self) -> bool:
        return self.verdict is Verdict.PRIME


@dataclass(frozen=True)
class ParitySignature:
    m: int
    alpha: int
    beta: int


def to_index(m: int) -> tuple[int, str]:
    """Map m = 6n-1 or 6n+1 to ``(n, side)``; anything else is a DomainError."""
    if isinstance(m, bool) or int(m) != m:
        raise DomainError(f"expected an integer, got {m!r}")
    m = int(m)
    if m < 5 or m % 6 not in (1, 5):
        raise DomainError(
            f"{m} is outside the domain: need m >= 5 with m = 6n-1 or m = 6n+1 (m mod 6 in {{1, 5}})"
        )
    if m % 6 == 5:
        return (m + 1) // 6, "minus"
    return (m - 1) // 6, "plus"


def classify(m: int) -> Classification:
    n, side = to_index(m)
    search = find_witness_minus_side if side == "minus" else find_witness_plus_side
    w = search(n)
    if w is None:
        return Classification(int(m), Verdict.PRIME)
    return Classification(int(m), Verdict.COMPOSITE, w, witness_to_divisors(w))


def classify_many(ms) -> list[Classification]:
    """``classify`` over many values, with the witness search batched."""
    ms = [int(m) for m in ms]
    mapped = [to_index(m) for m in ms]
    out: list[Optional[Classification]] = [None] * len(ms)
    for side in ("minus", "plus"):
        pos = [i for i, (_, s) in enumerate(mapped) if s == side]
        if not pos:
            continue
        kinds, xs, ys = find_witnesses([mapped[i][0] for i in pos], side)
        for i, k, x, y in zip(pos, kinds.tolist(), xs.tolist(), ys.tolist()):
            if k == 0:
                out[i] = Classification(ms[i], Verdict.PRIME)
            else:
                w = FormWitness(FormKind.from_code(k), x, y, mapped[i][0])
                out[i] = Classification(ms[i], Verdict.COMPOSITE, w, witness_to_divisors(w))
    return out


def candidates(limit: int) -> np.ndarray:
    """All m = 6n -/+ 1 for 1 <= n <= limit, ascending: 5, 7, 11, 13, ..."""
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    n = np.arange(1, limit + 1, dtype=np.int64)
    seq = np.empty(2 * limit, dtype=np.int64)
    seq[0::2] = 6 * n - 1
    seq[1::2] = 6 * n + 1
    return seq


def parity_signature(m: int) -> ParitySignature:
    to_index(m)
    alpha = beta = 0
    for p, e in oracle.factorize(int(m)).items():
        if p % 6 == 5:
            alpha += e
        elif p % 6 == 1:
            beta += e
    return ParitySignature(int(m), alpha, beta)


@dataclass
class ParityReport:
    limit: int
    checked: int = 0
    alpha_odd: int = 0
    alpha_even: int = 0
    violation_count: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violation_count == 0


def verify_parity_law(limit: int, max_violations: int = 100) -> ParityReport:
    """Check ``alpha odd <=> m = 5 (mod 6)`` for every candidate m <= 6*limit+1.

    Violations are counted and the first ``max_violations`` kept as
    ParitySignature samples; nothing is raised.
    """
    report = ParityReport(limit)
    for m in candidates(limit).tolist():
        sig = parity_signature(m)
        report.checked += 1
        odd = sig.alpha % 2 == 1
        if odd:
            report.alpha_odd += 1
        else:
            report.alpha_even += 1
        if odd != (m % 6 == 5):
            report.violation_count += 1
            if len(report.violations) < max_violations:
                report.violations.append(sig)
    return report


@dataclass
class MergedReport:
    limit: int
    length: int
    primes_checked: int
    passed: bool
    first_discrepancy: Optional[str] = None


def merged_sequence_check(limit: int) -> MergedReport:
    """Interleave (6n-1, 6n+1) for n <= limit; check ordering and prime coverage."""
    seq = candidates(limit)
    top = 6 * limit + 1
    primes = np.flatnonzero(oracle.prime_mask(top))
    primes = primes[primes >= 5]
    steps = np.flatnonzero(np.diff(seq) <= 0)
    if steps.size:
        i = int(steps[0])
        return MergedReport(limit, int(seq.size), int(primes.size), False,
                            f"not increasing at position {i + 1}: {seq[i]} then {seq[i + 1]}")
    missing = primes[~np.isin(primes, seq)]
    if missing.size:
        return MergedReport(limit, int(seq.size), int(primes.size), False,
                            f"prime {int(missing[0])} not in the sequence")
    return MergedReport(limit, int(seq.size), int(primes.size), True)
