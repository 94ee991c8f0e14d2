"""Order-preserving parallel map over independent samples.

Items are split into fixed-size chunks before any worker starts and results
are reassembled in input order, so every reduction downstream sees the same
sequence no matter how many threads ran.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")

CHUNK_SIZE = 64
THREADS_VARIABLE = "CHASE_THREADS"


def worker_count() -> int:
    """Worker threads to use: CHASE_THREADS if set, else the CPU count.

    Raises:
        ValueError: If CHASE_THREADS is not a positive integer.
    """
    raw = os.environ.get(THREADS_VARIABLE)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        count = int(raw)
    except ValueError as e:
        raise ValueError(f"{THREADS_VARIABLE} must be a positive integer, got {raw!r}") from e
    if count < 1:
        raise ValueError(f"{THREADS_VARIABLE} must be a positive integer, got {raw!r}")
    return count


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], workers: int | None = None, chunk_size: int = CHUNK_SIZE
) -> list[R]:
    """Applies fn to every item, returning results in input order.

    Args:
        fn: A pure function of one item.
        items: The inputs.
        workers: Thread count, defaults to worker_count().
        chunk_size: Items per task; coarse work such as whole runs uses 1.

    Returns:
        [fn(item) for item in items].
    """
    items = list(items)
    workers = worker_count() if workers is None else workers
    chunks = [items[i : i + chunk_size] for i in range(0, len(items), chunk_size)]
    if workers <= 1 or len(chunks) <= 1:
        return [fn(item) for item in items]

    def run(chunk: list[T]) -> list[R]:
        return [fn(item) for item in chunk]

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return [result for chunk_results in pool.map(run, chunks) for result in chunk_results]
