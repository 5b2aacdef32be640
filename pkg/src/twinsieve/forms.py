"""The three quadratic forms, their witnesses, and witness-to-divisor maps.

Indexing convention: for an index n >= 1 the candidate pair is
``(6n - 1, 6n + 1)``; the "minus side" is 6n-1 and the "plus side" is 6n+1.

    6n-1 composite  <=>  n = 6xy + x - y         (PLUS_MINUS)
    6n+1 composite  <=>  n = 6xy - x - y  or  n = 6xy + x + y
                         (MINUS_MINUS)           (PLUS_PLUS)

with x, y >= 1 throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .errors import ArithmeticRangeError, CertificateError, DomainError

U64_MAX = 2**64 - 1
# largest n whose pair (6n-1, 6n+1) fits in an unsigned 64-bit word
MAX_INDEX = (U64_MAX - 1) // 6


class FormKind(enum.Enum):
    PLUS_MINUS = "PLUS_MINUS"
    PLUS_PLUS = "PLUS_PLUS"
    MINUS_MINUS = "MINUS_MINUS"

    @property
    def signs(self) -> tuple[int, int]:
        """``(sx, sy)`` such that the form's value times 6 plus sx*sy is (6x+sx)(6y+sy)."""
        return _SIGNS[self]

    @property
    def side(self) -> str:
        return "minus" if self is FormKind.PLUS_MINUS else "plus"

    @property
    def code(self) -> int:
        return _CODES[self]

    @classmethod
    def from_code(cls, code: int) -> "FormKind":
        return _FROM_CODE[int(code)]


_SIGNS = {
    FormKind.PLUS_MINUS: (-1, 1),
    FormKind.PLUS_PLUS: (1, 1),
    FormKind.MINUS_MINUS: (-1, -1),
}
_CODES = {
    FormKind.PLUS_MINUS: kernels.KIND_PLUS_MINUS,
    FormKind.PLUS_PLUS: kernels.KIND_PLUS_PLUS,
    FormKind.MINUS_MINUS: kernels.KIND_MINUS_MINUS,
}
_FROM_CODE = {v: k for k, v in _CODES.items()}


@dataclass(frozen=True)
class FormWitness:
    kind: FormKind
    x: int
    y: int
    n: int

    def __post_init__(self):
        if self.x < 1 or self.y < 1:
            raise DomainError(f"witness needs x, y >= 1, got ({self.x}, {self.y})")
        if eval_form(self.kind, self.x, self.y) != self.n:
            raise DomainError(f"{self.kind.name}({self.x}, {self.y}) != {self.n}")

    def __str__(self):
        return f"{self.kind.name}({self.x},{self.y})"


@dataclass(frozen=True)
class DivisorPair:
    d1: int
    d2: int
    m: int

    def __str__(self):
        return f"{self.d1}x{self.d2}"


def check_index(n: int) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise DomainError(f"index must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}")
    if n > MAX_INDEX:
        raise ArithmeticRangeError(f"6*{n}+1 does not fit in 64 bits")
    return n


def eval_form(kind: FormKind, x: int, y: int) -> int:
    """Value of ``kind`` at (x, y); raises if it leaves the 64-bit range."""
    if x < 1 or y < 1:
        raise DomainError(f"x and y must be >= 1, got ({x}, {y})")
    # 6xy + x + y bounds all three forms
    if 6 * x * y + x + y > U64_MAX:
        raise ArithmeticRangeError(f"form value at ({x}, {y}) exceeds 64 bits")
    sx, sy = kind.signs
    return 6 * x * y + sy * x + sx * y


def _search(n: int, kind: FormKind) -> Optional[FormWitness]:
    # Same two-phase search as kernels._search_form_loops, on Python ints so
    # it stays exact over the full 64-bit index range.
    sx, sy = kind.signs
    r = math.isqrt(6 * n + sx * sy)
    x = 1
    while 6 * x + sx <= r:
        den = 6 * x + sx
        num = n - sy * x
        if num >= den and num % den == 0:
            return FormWitness(kind, x, num // den, n)
        x += 1
    for y in range((r - sy) // 6, 0, -1):
        den = 6 * y + sy
        num = n - sx * y
        if num >= den and num % den == 0:
            return FormWitness(kind, num // den, y, n)
    return None


def find_witness_minus_side(n: int) -> Optional[FormWitness]:
    """PLUS_MINUS witness with the smallest x, or None when 6n-1 is prime.

    >>> find_witness_minus_side(11)
    FormWitness(kind=<FormKind.PLUS_MINUS: 'PLUS_MINUS'>, x=1, y=2, n=11)
    """
    return _search(check_index(n), FormKind.PLUS_MINUS)


def find_witness_plus_side(n: int) -> Optional[FormWitness]:
    """MINUS_MINUS witness if any, else PLUS_PLUS, else None (6n+1 prime).

    Within a kind the witness with the smallest x is returned.
    """
    n = check_index(n)
    return _search(n, FormKind.MINUS_MINUS) or _search(n, FormKind.PLUS_PLUS)


def is_twin_index(n: int) -> bool:
    """True iff no form represents n, i.e. (6n-1, 6n+1) are twin primes."""
    return find_witness_minus_side(n) is None and find_witness_plus_side(n) is None


def witness_to_divisors(w: FormWitness) -> DivisorPair:
    sx, sy = w.kind.signs
    a, b = 6 * w.x + sx, 6 * w.y + sy
    m = 6 * w.n + sx * sy
    d1, d2 = min(a, b), max(a, b)
    if d1 * d2 != m or not 1 < d1 <= d2 < m:
        raise CertificateError(f"{w} does not factor {m}: {a}*{b}")
    return DivisorPair(d1, d2, m)


def find_witnesses(ns, side: str, backend: Optional[str] = None):
    """Batched canonical witnesses for many indices at once.

    ``side`` is ``"minus"`` or ``"plus"``. Returns ``(kinds, xs, ys)`` arrays
    where kinds holds ``FormKind.code`` values and 0 means no witness.
    Choice of witness matches the scalar searches exactly.
    """
    ns = np.asarray(ns, dtype=np.int64)
    if side not in ("minus", "plus"):
        raise ValueError(f"side must be 'minus' or 'plus', got {side!r}")
    code = kernels.SIDE_MINUS if side == "minus" else kernels.SIDE_PLUS
    return kernels.witness_batch(ns, code, backend)


def canonical_witness(n: int) -> Optional[FormWitness]:
    """Minus-side witness if one exists, else the plus-side witness."""
    return find_witness_minus_side(n) or find_witness_plus_side(n)
