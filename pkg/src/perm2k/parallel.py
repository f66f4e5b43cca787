"""Ordered parallel map over independent subproblems.

Results are collected in input order, so any reduction over them is
schedule-independent by construction.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def resolve_workers(workers):
    """Normalize a worker-count setting; 'auto' and None mean cpu count."""
    if workers in (None, "auto"):
        return os.cpu_count() or 1
    w = int(workers)
    if w < 1:
        raise ValueError("workers must be >= 1")
    return w


def pmap(fn, items, workers=1):
    """Map fn over items; output order always matches input order."""
    items = list(items)
    workers = resolve_workers(workers)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
