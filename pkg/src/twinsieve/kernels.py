"""Hot loops: progression marking for sieve segments and batched witness search.

Every kernel exists twice. The ``*_loops`` functions are written as explicit
scalar loops and are what numba compiles; the ``*_numpy`` functions do the
same work with slice assignment and masked vector passes. ``mark_segment``
and ``witness_batch`` are bound to whichever backend ``_accel`` selected.

Form encoding used throughout: a form is the pair of signs ``(sx, sy)`` with

    (6x + sx)(6y + sy) = 6 * (6xy + sy*x + sx*y) + sx*sy

so PLUS_MINUS is (-1, +1), PLUS_PLUS is (+1, +1), MINUS_MINUS is (-1, -1).
"""
from __future__ import annotations

import numpy as np

from ._accel import NUMBA_AVAILABLE, njit

KIND_NONE = 0
KIND_PLUS_MINUS = 1
KIND_PLUS_PLUS = 2
KIND_MINUS_MINUS = 3

SIDE_MINUS = 0
SIDE_PLUS = 1

# Batched witness search works in int64 and takes float square roots.
BATCH_MAX_INDEX = 10**15


def _first_at_or_after(first, step, lo):
    if first >= lo:
        return first
    return first + ((lo - first + step - 1) // step) * step


def _first_hit(first, step, lo):
    # jitted twin of _first_at_or_after, called from the loop kernels
    if first >= lo:
        return first
    return first + ((lo - first + step - 1) // step) * step


def _mark_segment_loops(lo, hi, blocked_minus, blocked_plus):
    # d = min(x, y). PLUS_MINUS is not symmetric, so both x = d and y = d
    # branches are walked; the symmetric forms only need x = d <= y.
    d = 1
    while 6 * d * d - 2 * d < hi:
        s_lo = 6 * d - 1
        s_hi = 6 * d + 1
        # PLUS_MINUS, x = d, y >= d: n = y(6d-1) + d
        n = _first_hit(6 * d * d, s_lo, lo)
        while n < hi:
            blocked_minus[n - lo] = True
            n += s_lo
        # PLUS_MINUS, y = d, x > d: n = x(6d+1) - d
        n = _first_hit(6 * d * d + 6 * d + 1, s_hi, lo)
        while n < hi:
            blocked_minus[n - lo] = True
            n += s_hi
        # MINUS_MINUS, x = d, y >= d: n = y(6d-1) - d
        n = _first_hit(6 * d * d - 2 * d, s_lo, lo)
        while n < hi:
            blocked_plus[n - lo] = True
            n += s_lo
        # PLUS_PLUS, x = d, y >= d: n = y(6d+1) + d
        n = _first_hit(6 * d * d + 2 * d, s_hi, lo)
        while n < hi:
            blocked_plus[n - lo] = True
            n += s_hi
        d += 1


def _mark_segment_numpy(lo, hi, blocked_minus, blocked_plus):
    d = 1
    while 6 * d * d - 2 * d < hi:
        s_lo = 6 * d - 1
        s_hi = 6 * d + 1
        blocked_minus[_first_at_or_after(6 * d * d, s_lo, lo) - lo :: s_lo] = True
        blocked_minus[_first_at_or_after(6 * d * d + 6 * d + 1, s_hi, lo) - lo :: s_hi] = True
        blocked_plus[_first_at_or_after(6 * d * d - 2 * d, s_lo, lo) - lo :: s_lo] = True
        blocked_plus[_first_at_or_after(6 * d * d + 2 * d, s_hi, lo) - lo :: s_hi] = True
        d += 1


def _isqrt_loops(m):
    r = np.int64(np.sqrt(np.float64(m)))
    while r * r > m:
        r -= 1
    while (r + 1) * (r + 1) <= m:
        r += 1
    return r


def _search_form_loops(n, sx, sy):
    """Smallest-x witness of form (sx, sy) for index n, or (0, 0)."""
    m = 6 * n + sx * sy
    r = _isqrt_loops(m)
    # x with 6x+sx <= sqrt(m): increasing x, y solved by division
    x = 1
    while 6 * x + sx <= r:
        den = 6 * x + sx
        num = n - sy * x
        if num >= den and num % den == 0:
            return x, num // den
        x += 1
    # otherwise the y-factor is the small one: largest y gives smallest x
    y = (r - sy) // 6
    while y >= 1:
        den = 6 * y + sy
        num = n - sx * y
        if num >= den and num % den == 0:
            return num // den, y
        y -= 1
    return 0, 0


def _witness_batch_loops(ns, side, kinds, xs, ys):
    for i in range(ns.shape[0]):
        n = ns[i]
        if side == 0:
            x, y = _search_form_loops(n, -1, 1)
            if x > 0:
                kinds[i] = 1
                xs[i] = x
                ys[i] = y
        else:
            x, y = _search_form_loops(n, -1, -1)
            if x > 0:
                kinds[i] = 3
                xs[i] = x
                ys[i] = y
                continue
            x, y = _search_form_loops(n, 1, 1)
            if x > 0:
                kinds[i] = 2
                xs[i] = x
                ys[i] = y


def _isqrt_numpy(m):
    r = np.sqrt(m.astype(np.float64)).astype(np.int64)
    r -= r * r > m
    r += (r + 1) * (r + 1) <= m
    return r


def _search_form_numpy(ns, sx, sy):
    """Vectorised ``_search_form_loops`` over an index array."""
    out_x = np.zeros(ns.shape[0], dtype=np.int64)
    out_y = np.zeros(ns.shape[0], dtype=np.int64)
    if ns.shape[0] == 0:
        return out_x, out_y
    r = _isqrt_numpy(6 * ns + sx * sy)
    pending = np.arange(ns.shape[0])
    x = 1
    while pending.size and 6 * x + sx <= r[pending].max():
        den = 6 * x + sx
        n = ns[pending]
        num = n - sy * x
        hit = (6 * x + sx <= r[pending]) & (num >= den) & (num % den == 0)
        idx = pending[hit]
        out_x[idx] = x
        out_y[idx] = num[hit] // den
        pending = pending[~hit]
        x += 1
    if pending.size:
        y = int((r[pending].max() - sy) // 6)
        while pending.size and y >= 1:
            den = 6 * y + sy
            n = ns[pending]
            num = n - sx * y
            hit = (den <= r[pending]) & (num >= den) & (num % den == 0)
            idx = pending[hit]
            out_x[idx] = num[hit] // den
            out_y[idx] = y
            pending = pending[~hit]
            y -= 1
    return out_x, out_y


def _witness_batch_numpy(ns, side, kinds, xs, ys, chunk=1 << 16):
    # chunks bound the temporaries and let each chunk stop at its own sqrt bound
    if ns.shape[0] > chunk:
        for lo in range(0, ns.shape[0], chunk):
            sl = slice(lo, lo + chunk)
            _witness_batch_numpy(ns[sl], side, kinds[sl], xs[sl], ys[sl], chunk)
        return
    if side == SIDE_MINUS:
        x, y = _search_form_numpy(ns, -1, 1)
        found = x > 0
        kinds[found] = KIND_PLUS_MINUS
        xs[found] = x[found]
        ys[found] = y[found]
        return
    x, y = _search_form_numpy(ns, -1, -1)
    found = x > 0
    kinds[found] = KIND_MINUS_MINUS
    xs[found] = x[found]
    ys[found] = y[found]
    rest = np.flatnonzero(~found)
    x, y = _search_form_numpy(ns[rest], 1, 1)
    found = x > 0
    kinds[rest[found]] = KIND_PLUS_PLUS
    xs[rest[found]] = x[found]
    ys[rest[found]] = y[found]


if NUMBA_AVAILABLE:
    _first_hit = njit(_first_hit)
    _isqrt_loops = njit(_isqrt_loops)
    _search_form_loops = njit(_search_form_loops)
    _mark_segment_numba = njit(_mark_segment_loops)
    _witness_batch_numba = njit(_witness_batch_loops)
    MARK_BACKENDS = {"numba": _mark_segment_numba, "numpy": _mark_segment_numpy}
    WITNESS_BACKENDS = {"numba": _witness_batch_numba, "numpy": _witness_batch_numpy}
    _DEFAULT = "numba"
else:
    MARK_BACKENDS = {"numpy": _mark_segment_numpy}
    WITNESS_BACKENDS = {"numpy": _witness_batch_numpy}
    _DEFAULT = "numpy"


def mark_segment(lo, hi, backend=None):
    """Return ``(blocked_minus, blocked_plus)`` boolean arrays for ``[lo, hi)``."""
    blocked_minus = np.zeros(hi - lo, dtype=np.bool_)
    blocked_plus = np.zeros(hi - lo, dtype=np.bool_)
    MARK_BACKENDS[backend or _DEFAULT](lo, hi, blocked_minus, blocked_plus)
    return blocked_minus, blocked_plus


def witness_batch(ns, side, backend=None):
    """Canonical witnesses for every index in ``ns`` on one residue side.

    Returns ``(kinds, xs, ys)`` int64 arrays; ``kinds == KIND_NONE`` where no
    witness exists (the corresponding 6n-1 or 6n+1 is prime).
    """
    ns = np.ascontiguousarray(ns, dtype=np.int64)
    if ns.size and (ns.min() < 1 or ns.max() > BATCH_MAX_INDEX):
        raise ValueError(f"batched search needs 1 <= n <= {BATCH_MAX_INDEX}")
    kinds = np.zeros(ns.shape[0], dtype=np.int64)
    xs = np.zeros(ns.shape[0], dtype=np.int64)
    ys = np.zeros(ns.shape[0], dtype=np.int64)
    WITNESS_BACKENDS[backend or _DEFAULT](ns, side, kinds, xs, ys)
    return kinds, xs, ys


def default_backend():
    return _DEFAULT


def segment_bytes(segment_size):
    """Working memory of one segment's two bitmaps."""
    return 2 * segment_size

