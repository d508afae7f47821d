"""
Module: Ordered fan-out of independent work items

Public Functions:
    ordered_map: Apply a function to work items, results in submission order
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from time import time
from typing import Callable, Iterable, Optional, TypeVar

from .progress import Progress

_Item = TypeVar("_Item")
_Result = TypeVar("_Result")


def ordered_map(
    func: Callable[[_Item], _Result],
    items: Iterable[_Item],
    workers: int = 1,
    report: Optional[Callable[[Progress], None]] = None,
) -> list[_Result]:
    """
    Apply `func` to every item, serially or over a process pool

    Results come back in submission order whatever the worker count, so any
    reduction over them is reproducible.

    Args:
        func    (Callable)          : Picklable top-level function
        items   (Iterable)          : Work items
        workers (int)               : Process count; 1 runs in this process
        report  (Callable | None)   : Called with the progress after each item

    Returns:
        (list): One result per item
    """
    work = list(items)
    progress = Progress(len(work))
    results: list[_Result] = []
    start = time()

    def _record(result: _Result) -> None:
        nonlocal start
        now = time()
        progress.tick(now - start)
        start = now
        results.append(result)
        if report is not None:
            report(progress)

    if workers <= 1 or len(work) <= 1:
        for item in work:
            _record(func(item))
        return results

    with ProcessPoolExecutor(max_workers=workers) as executor:
        for result in executor.map(func, work):
            _record(result)
    return results
