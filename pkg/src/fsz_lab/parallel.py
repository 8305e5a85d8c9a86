"""Budgets and a small deterministic worker pool.

Budgets are element counts, never seconds, so refusals are reproducible
across machines.  Partitioned work is reduced in partition order, which keeps
results byte-identical for any thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")

DEFAULT_BUDGET = 4_000_000


class BudgetExceeded(Exception):
    """Raised when an enumeration would exceed its element budget."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration requires {required} elements, over the budget of {budget}"
        )


def check_budget(required: int, budget: int | None) -> None:
    if budget is not None and required > budget:
        raise BudgetExceeded(required, budget)


def default_threads() -> int:
    """Worker count: FSZ_LAB_THREADS if set, else the CPU count (capped at 8)."""
    env = os.environ.get("FSZ_LAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, min(os.cpu_count() or 1, 8))


def split_range(start: int, stop: int, parts: int) -> list[tuple[int, int]]:
    """Split [start, stop) into at most `parts` contiguous non-empty chunks."""
    total = stop - start
    parts = max(1, min(parts, total)) if total else 1
    chunk, extra = divmod(total, parts)
    out = []
    lo = start
    for i in range(parts):
        hi = lo + chunk + (1 if i < extra else 0)
        if hi > lo:
            out.append((lo, hi))
        lo = hi
    return out or [(start, stop)]


def run_partitioned(
    worker: Callable[[int, int], T],
    start: int,
    stop: int,
    threads: int | None = None,
) -> list[T]:
    """Run worker(lo, hi) over a split of [start, stop); results in range order."""
    threads = default_threads() if threads is None else max(1, threads)
    ranges = split_range(start, stop, threads)
    if threads == 1 or len(ranges) == 1:
        return [worker(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, lo, hi) for lo, hi in ranges]
        return [f.result() for f in futures]


def run_over_chunks(
    worker: Callable[[Sequence[int]], T],
    items: Sequence[int],
    threads: int | None = None,
) -> list[T]:
    """Like run_partitioned but over an explicit item list."""
    threads = default_threads() if threads is None else max(1, threads)
    ranges = split_range(0, len(items), threads)
    chunks = [items[lo:hi] for lo, hi in ranges]
    if threads == 1 or len(chunks) == 1:
        return [worker(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, c) for c in chunks]
        return [f.result() for f in futures]
