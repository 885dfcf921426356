from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from scenario_bounds.settings import settings

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(task: Callable[[T], R], items: Iterable[T], workers: int | None = None) -> list[R]:
    """
    Apply ``task`` to every item and return the results in item order.

    Runs serially for one worker, otherwise on a thread pool (samplers and oracles are closures, so tasks
    stay in-process).

    Args:
        task (Callable[[T], R]): The task, free of shared mutable state.
        items (Iterable[T]): The task inputs.
        workers (int | None): Pool size, ``settings.experiment_workers`` when omitted.

    Returns:
        list[R]: One result per item.
    """
    workers = settings.experiment_workers if workers is None else workers
    if workers <= 1:
        return [task(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, items))
