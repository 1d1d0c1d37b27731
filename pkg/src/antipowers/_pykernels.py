"""Pure-Python implementations of the hot kernels.

Exactness comes for free here: ``bytes`` objects hash and compare by value,
so dict/set membership never confuses two different blocks.
"""
from __future__ import annotations

from typing import Optional, Sequence, Tuple

BACKEND = "python"

Pair = Optional[Tuple[int, int]]


def apply_morphism(data: bytes, images: Sequence[bytes]) -> bytes:
    return b"".join(map(images.__getitem__, data))


def count_factors(data: bytes, n: int) -> int:
    if n < 1 or n > len(data):
        raise ValueError("factor length out of range")
    return len({data[j:j + n] for j in range(len(data) - n + 1)})


def _scan(data, start, m, k, canonical):
    seen = {}
    paired = set()
    best = None
    for q in range(k):
        lo = start + q * m
        p = seen.setdefault(data[lo:lo + m], q)
        if p == q or p in paired:
            continue
        if not canonical:
            return (p, q)
        paired.add(p)
        if best is None or p < best[0]:
            best = (p, q)
    return best


def first_duplicate(data: bytes, start: int, m: int, k: int) -> Pair:
    """Lexicographically smallest pair (p, q) of equal blocks, or None."""
    if start + k * m > len(data):
        raise IndexError("window exceeds data")
    return _scan(data, start, m, k, True)


class BlockIndex:
    """Block-equality queries over one immutable buffer."""

    backend = BACKEND

    def __init__(self, data: bytes):
        self.data = bytes(data)

    def __len__(self):
        return len(self.data)

    def _check(self, start, m, k):
        if start < 0 or m < 1 or k < 1 or start + k * m > len(self.data):
            raise IndexError("window exceeds indexed data")

    def first_duplicate(self, start: int, m: int, k: int) -> Pair:
        self._check(start, m, k)
        return _scan(self.data, start, m, k, True)

    def is_distinct(self, start: int, m: int, k: int) -> bool:
        self._check(start, m, k)
        return _scan(self.data, start, m, k, False) is None

    def gamma(self, start: int, k: int, mmax: int) -> Optional[int]:
        """Smallest m <= mmax whose k blocks at start are pairwise distinct."""
        self._check(start, mmax, k)
        for m in range(1, mmax + 1):
            if _scan(self.data, start, m, k, False) is None:
                return m
        return None
