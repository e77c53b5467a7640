"""Bit-string vertex algebra: the twist width, the fold permutation and
1-based views onto vertex labels.

Vertices are stored as ``(value, n)`` where ``value`` is the integer read
with bit 1 as the most significant digit, so ``Vertex.parse("0010").value
== 2``.  All public indexing is 1-based and runs left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath

__all__ = [
    "Vertex",
    "BitRangeView",
    "kappa",
    "phi",
    "phi_bits",
    "xor_range",
    "MAX_BITS",
]

MAX_BITS = 4096

# distance from an integer below which the double-precision value is re-checked
_NEAR_INTEGER = 1e-9


@lru_cache(maxsize=None)
def kappa(n: int) -> int:
    """Twist width: 0 for n == 1, else max(1, ceil(log2 n - 2 log2 log2 n))."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"kappa expects an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"kappa is defined for n >= 1, got {n}")
    if n == 1:
        return 0
    x = math.log2(n) - 2.0 * math.log2(math.log2(n))
    nearest = round(x)
    if abs(x - nearest) < _NEAR_INTEGER:
        with mpmath.workdps(60):
            lg = mpmath.log(n, 2)
            exact = lg - 2 * mpmath.log(lg, 2)
            if abs(exact - nearest) < mpmath.mpf(10) ** -40:
                ceiling = int(nearest)
            else:
                ceiling = int(mpmath.ceil(exact))
    else:
        ceiling = math.ceil(x)
    return max(1, ceiling)


def phi_bits(x: int, n: int) -> int:
    """Fold permutation on an n-bit integer label.

    The leading ``kappa(n)`` bits are XORed with the trailing ``kappa(n)``
    bits; everything else is copied.
    """
    if n <= 0:
        return x
    k = kappa(n)
    if k == 0:
        return x
    low = x & ((1 << k) - 1)
    return x ^ (low << (n - k))


@dataclass(frozen=True, order=True)
class Vertex:
    """Fixed-length binary label.  Ordering is by length, then value."""

    n: int
    value: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"vertex length must be >= 1, got {self.n}")
        if self.n > MAX_BITS:
            raise ValueError(f"vertex length {self.n} exceeds {MAX_BITS}")
        if not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def parse(cls, text: str) -> Vertex:
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a binary string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def zeros(cls, n: int) -> Vertex:
        return cls(n, 0)

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    def __len__(self) -> int:
        return self.n

    def bit(self, i: int) -> int:
        """Bit ``i`` (1-based, leftmost is 1)."""
        if not 1 <= i <= self.n:
            raise IndexError(f"bit index {i} outside 1..{self.n}")
        return (self.value >> (self.n - i)) & 1

    def __getitem__(self, i: int) -> int:
        return self.bit(i)

    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(i) for i in range(1, self.n + 1))

    def range(self, lo: int, hi: int) -> BitRangeView:
        return BitRangeView(self, lo, hi)


@dataclass(frozen=True)
class BitRangeView:
    """Inclusive 1-based slice ``source[lo..hi]``."""

    source: Vertex
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 1 <= self.lo <= self.hi <= self.source.n:
            raise ValueError(
                f"invalid range [{self.lo},{self.hi}] for a {self.source.n}-bit vertex"
            )

    @property
    def width(self) -> int:
        return self.hi - self.lo + 1

    def bits(self) -> tuple[int, ...]:
        return tuple(self.source.bit(i) for i in range(self.lo, self.hi + 1))

    def __str__(self) -> str:
        return "".join(map(str, self.bits()))


def _as_view(x: Vertex, r: BitRangeView | tuple[int, int]) -> BitRangeView:
    if isinstance(r, BitRangeView):
        return r
    lo, hi = r
    return BitRangeView(x, lo, hi)


def xor_range(
    x: Vertex,
    a: BitRangeView | tuple[int, int],
    b: BitRangeView | tuple[int, int],
) -> str:
    """Elementwise XOR of two equal-width ranges, as a 0/1 string.

    Ranges given as ``(lo, hi)`` tuples refer to ``x``; ``BitRangeView``
    arguments carry their own source vertex.
    """
    va, vb = _as_view(x, a), _as_view(x, b)
    if va.width != vb.width:
        raise ValueError(f"range widths differ: {va.width} != {vb.width}")
    return "".join(str(p ^ q) for p, q in zip(va.bits(), vb.bits()))


def phi(x: Vertex | str) -> Vertex:
    """Fold permutation on a vertex (an involution)."""
    if isinstance(x, str):
        x = Vertex.parse(x)
    return Vertex(x.n, phi_bits(x.value, x.n))
