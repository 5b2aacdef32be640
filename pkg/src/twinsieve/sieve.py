"""Segmented exclusion sieve over index space.

Each segment ``[lo, hi)`` gets two bitmaps: ``blocked_minus`` (6n-1 composite)
and ``blocked_plus`` (6n+1 composite). Bits are set generatively by walking
the arithmetic progressions each form traces out for a fixed x, so no index
is ever tested individually. Segments carry no shared state and may be
computed on worker threads; results are always consumed in index order.
"""
from __future__ import annotations

import hashlib
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .errors import ArithmeticRangeError, DomainError
from .forms import MAX_INDEX

DEFAULT_SEGMENT_SIZE = 1 << 20


@dataclass(frozen=True)
class SieveConfig:
    limit: int
    segment_size: int = DEFAULT_SEGMENT_SIZE
    parallelism_hint: int = 0
    backend: Optional[str] = None

    def __post_init__(self):
        for name in ("limit", "segment_size", "parallelism_hint"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
                raise DomainError(f"{name} must be an integer, got {value!r}")
        if self.limit < 1:
            raise DomainError(f"limit must be >= 1, got {self.limit}")
        if self.limit > MAX_INDEX:
            raise ArithmeticRangeError(f"6*{self.limit}+1 does not fit in 64 bits")
        if self.segment_size < 1:
            raise DomainError(f"segment_size must be >= 1, got {self.segment_size}")
        if self.parallelism_hint < 0:
            raise DomainError(f"parallelism_hint must be >= 0, got {self.parallelism_hint}")
        if self.backend is not None and self.backend not in kernels.MARK_BACKENDS:
            raise DomainError(f"unknown backend {self.backend!r}; have {sorted(kernels.MARK_BACKENDS)}")

    @property
    def threads(self) -> int:
        return self.parallelism_hint or os.cpu_count() or 1

    def bounds(self) -> Iterator[tuple[int, int]]:
        lo = 1
        while lo <= self.limit:
            hi = min(lo + self.segment_size, self.limit + 1)
            yield lo, hi
            lo = hi


@dataclass(frozen=True)
class SieveSegment:
    lo: int
    hi: int
    blocked_minus: np.ndarray
    blocked_plus: np.ndarray

    @property
    def blocked(self) -> np.ndarray:
        return self.blocked_minus | self.blocked_plus

    def twin_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.blocked).astype(np.int64) + self.lo


@dataclass(frozen=True)
class TwinPair:
    n: int
    p: int
    q: int

    @classmethod
    def from_index(cls, n: int) -> "TwinPair":
        return cls(n, 6 * n - 1, 6 * n + 1)


def sieve_segment(lo: int, hi: int, backend: Optional[str] = None) -> SieveSegment:
    """Exclusion bitmaps for indices ``lo <= n < hi``."""
    if not 1 <= lo < hi:
        raise DomainError(f"need 1 <= lo < hi, got lo={lo}, hi={hi}")
    if hi - 1 > MAX_INDEX:
        raise ArithmeticRangeError(f"6*{hi - 1}+1 does not fit in 64 bits")
    blocked_minus, blocked_plus = kernels.mark_segment(lo, hi, backend)
    return SieveSegment(lo, hi, blocked_minus, blocked_plus)


def iter_segments(config: SieveConfig) -> Iterator[SieveSegment]:
    """Sieve every segment of ``[1, config.limit]``, yielded in index order."""
    threads = config.threads
    if threads == 1:
        for lo, hi in config.bounds():
            yield sieve_segment(lo, hi, config.backend)
        return
    # bounded look-ahead keeps memory at O(threads) segments
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = deque()
        for lo, hi in config.bounds():
            pending.append(pool.submit(sieve_segment, lo, hi, config.backend))
            if len(pending) >= 2 * threads:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def iter_twin_indices(config: SieveConfig) -> Iterator[np.ndarray]:
    """Per-segment int64 arrays of twin indices, in increasing order."""
    for segment in iter_segments(config):
        yield segment.twin_indices()


def enumerate_twins(config: SieveConfig) -> Iterator[TwinPair]:
    for chunk in iter_twin_indices(config):
        for n in chunk.tolist():
            yield TwinPair.from_index(n)


def count_twins(config: SieveConfig) -> int:
    return sum(int(chunk.size) for chunk in iter_twin_indices(config))


def blocked_flags(config: SieveConfig) -> tuple[np.ndarray, np.ndarray]:
    """Whole-range ``(blocked_minus, blocked_plus)`` for indices 1..limit."""
    minus = np.empty(config.limit, dtype=np.bool_)
    plus = np.empty(config.limit, dtype=np.bool_)
    for seg in iter_segments(config):
        minus[seg.lo - 1 : seg.hi - 1] = seg.blocked_minus
        plus[seg.lo - 1 : seg.hi - 1] = seg.blocked_plus
    return minus, plus


def twin_flags(config: SieveConfig) -> np.ndarray:
    minus, plus = blocked_flags(config)
    return ~(minus | plus)


@dataclass(frozen=True)
class SieveSummary:
    limit: int
    count: int
    digest: str
    last_index: Optional[int]


def summarize(config: SieveConfig) -> SieveSummary:
    """Twin count plus a SHA-256 over the twin indices as little-endian uint64.

    The digest depends only on the set of twin indices, so it is identical
    for every segment size and thread count.
    """
    h = hashlib.sha256()
    count = 0
    last = None
    for chunk in iter_twin_indices(config):
        if chunk.size:
            h.update(chunk.astype("<u8").tobytes())
            count += int(chunk.size)
            last = int(chunk[-1])
    return SieveSummary(config.limit, count, h.hexdigest(), last)
