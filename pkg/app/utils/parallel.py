"""
Worker pool helpers.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

T = TypeVar('T')
R = TypeVar('R')


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Apply `func` to every item, possibly on several threads.

    Results come back in input order whatever the worker count, so any
    reduction done over them is identical for 1 or N workers.

    Args:
        func: Function applied to each item
        items: Work items
        workers: Thread count (1 runs inline)

    Returns:
        List of results in input order
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(func, items))
