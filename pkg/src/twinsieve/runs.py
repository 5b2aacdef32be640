"""Maximal runs of consecutive blocked indices.

An index is blocked when at least one form represents it, so its candidate
pair contains a composite. A run that reaches the upper limit is flagged
``truncated``: it may continue past the range that was sieved.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .errors import EmptyInputError
from .forms import FormKind, FormWitness, find_witnesses
from .sieve import DEFAULT_SEGMENT_SIZE, SieveConfig, iter_segments


@dataclass(frozen=True)
class RunReport:
    start: int
    length: int
    truncated: bool = False
    witnesses: tuple = field(default=(), compare=False)

    @property
    def end(self) -> int:
        """Last index of the run (inclusive)."""
        return self.start + self.length - 1


def _segment_runs(blocked: np.ndarray, lo: int) -> tuple[np.ndarray, np.ndarray]:
    padded = np.concatenate(([False], blocked, [False])).astype(np.int8)
    edges = np.diff(padded)
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return starts + lo, ends - starts


def iter_run_spans(config: SieveConfig) -> Iterator[tuple[int, int]]:
    """``(start, length)`` of each maximal blocked run, stitched across segments."""
    open_start: Optional[int] = None
    open_len = 0
    for seg in iter_segments(config):
        starts, lengths = _segment_runs(seg.blocked, seg.lo)
        for s, n in zip(starts.tolist(), lengths.tolist()):
            if open_start is not None:
                if s == open_start + open_len:
                    open_len += n
                    continue
                yield open_start, open_len
            open_start, open_len = s, n
    if open_start is not None:
        yield open_start, open_len


def _attach_witnesses(spans: list[tuple[int, int]]) -> list[tuple]:
    if not spans:
        return []
    ns = np.concatenate([np.arange(s, s + n, dtype=np.int64) for s, n in spans])
    kinds, xs, ys = find_witnesses(ns, "minus")
    rest = np.flatnonzero(kinds == 0)
    pk, px, py = find_witnesses(ns[rest], "plus")
    kinds[rest], xs[rest], ys[rest] = pk, px, py
    if np.any(kinds == 0):
        bad = int(ns[np.flatnonzero(kinds == 0)[0]])
        raise RuntimeError(f"index {bad} marked blocked but has no witness")
    witnesses = [
        FormWitness(FormKind.from_code(k), x, y, n)
        for k, x, y, n in zip(kinds.tolist(), xs.tolist(), ys.tolist(), ns.tolist())
    ]
    out, pos = [], 0
    for _, n in spans:
        out.append(tuple(witnesses[pos : pos + n]))
        pos += n
    return out


def blocked_runs(
    limit: int,
    *,
    witnesses: bool = True,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 0,
) -> list[RunReport]:
    """Maximal blocked runs in ``[1, limit]`` in increasing start order.

    With ``witnesses=True`` each run carries one canonical witness per index
    (minus-side witness if 6n-1 is composite, otherwise the plus-side one).
    """
    config = SieveConfig(limit, segment_size, threads)
    spans = list(iter_run_spans(config))
    attached = _attach_witnesses(spans) if witnesses else [()] * len(spans)
    return [
        RunReport(s, n, s + n - 1 == limit, w)
        for (s, n), w in zip(spans, attached)
    ]


def longest_run(
    limit: int,
    *,
    witnesses: bool = True,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 0,
) -> RunReport:
    """The longest blocked run in ``[1, limit]``; ties go to the smallest start."""
    best = None
    for s, n in iter_run_spans(SieveConfig(limit, segment_size, threads)):
        if best is None or n > best[1]:
            best = (s, n)
    if best is None:
        raise EmptyInputError(f"no blocked index in [1, {limit}]")
    s, n = best
    w = _attach_witnesses([best])[0] if witnesses else ()
    return RunReport(s, n, s + n - 1 == limit, w)


def run_length_histogram(
    limit: int, *, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 0
) -> dict[int, int]:
    """``{run length: number of runs}`` over ``[1, limit]``, truncated run included."""
    counts = Counter(n for _, n in iter_run_spans(SieveConfig(limit, segment_size, threads)))
    return dict(sorted(counts.items()))
