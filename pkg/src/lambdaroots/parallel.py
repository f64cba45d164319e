"""Deterministic sharding helpers.

Work is split into contiguous chunks and results are consumed in chunk
order, so any worker count produces identical output.  Worker functions
must be module-level (picklable).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Contiguous inclusive shards covering lo..hi; empty when hi < lo."""
    if hi < lo:
        return []
    n = hi - lo + 1
    parts = max(1, min(parts, n))
    base, extra = divmod(n, parts)
    shards = []
    start = lo
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        shards.append((start, start + size - 1))
        start += size
    return shards


def parallel_map(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """Map preserving order; runs in-process unless workers > 1."""
    if workers <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
