"""Order-preserving parallel map."""

from typing import Callable, Iterable, List, Optional, TypeVar

import psutil
from joblib import Parallel, delayed

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: Optional[int]) -> int:
    """None 或 0 表示使用全部物理核"""
    if workers is None or workers <= 0:
        return psutil.cpu_count(logical=False) or 1
    return int(workers)


def parallel_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = 1) -> List[R]:
    """
    并行映射，结果顺序与输入一致

    workers == 1 时直接串行执行，避免进程池开销。结果与 workers 无关，
    前提是 func 自身不依赖执行顺序。
    """
    n_jobs = resolve_workers(workers)
    items = list(items)
    if n_jobs == 1 or len(items) <= 1:
        return [func(item) for item in items]
    return Parallel(n_jobs=n_jobs)(delayed(func)(item) for item in items)
