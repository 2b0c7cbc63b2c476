"""Deterministic work partitioning over enumerate_all by sign-string prefix."""
from __future__ import annotations

import multiprocessing
import os
from typing import Callable, Optional

from .signotope import check_limit, prefixes, triples

# Below this n a single process is faster than spawning workers.
MIN_PARALLEL_N = 7


def default_jobs() -> int:
    return os.cpu_count() or 1


def map_prefixes(worker: Callable[..., list], n: int, jobs: Optional[int] = None,
                 limit: Optional[int] = None, extra: tuple = ()) -> list:
    """Run ``worker(n, prefix, *extra)`` over a prefix partition of the
    signotopes on n elements and concatenate the results in prefix order,
    so the output does not depend on the number of jobs."""
    check_limit(n, limit)
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or n < MIN_PARALLEL_N:
        return list(worker(n, "", *extra))
    length = min(len(triples(n)), 8)
    parts = prefixes(n, length)
    ctx = multiprocessing.get_context("fork") if hasattr(os, "fork") else multiprocessing
    with ctx.Pool(jobs) as pool:
        chunks = pool.starmap(worker, [(n, p, *extra) for p in parts])
    out: list = []
    for c in chunks:
        out.extend(c)
    return out
