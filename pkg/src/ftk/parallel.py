"""Worker-count plumbing: FTK_THREADS caps enumeration parallelism."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor


def worker_count() -> int:
    try:
        n = int(os.environ.get("FTK_THREADS", "1"))
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn, items):
    """Map preserving input order; thread-parallel when FTK_THREADS > 1.

    The callers' merges are order-independent and re-sorted afterwards, so
    scheduling cannot change any output.
    """
    items = list(items)
    n = worker_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
