"""Bounded process-parallel map over picklable module-level kernels.

Results always come back in submission order, so any reduction over them is
independent of the worker count.
"""
import logging
from typing import Any, Callable, List, Optional, Sequence, Tuple

import anyio
import anyio.to_process

log = logging.getLogger(__name__)

# called in the parent as (tasks done, tasks total) after each task finishes
Progress = Callable[[int, int], None]


def split_range(total: int, pieces: int) -> List[Tuple[int, int]]:
    """Cut 0..total-1 into at most `pieces` contiguous half-open ranges"""
    pieces = max(1, min(pieces, total))
    step, extra = divmod(total, pieces)
    bounds = []
    lo = 0
    for i in range(pieces):
        hi = lo + step + (1 if i < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


async def _map_async(fn: Callable[..., Any], arg_tuples: Sequence[tuple], jobs: int,
                     progress: Optional[Progress]) -> List[Any]:
    limiter = anyio.CapacityLimiter(jobs)
    results: List[Any] = [None] * len(arg_tuples)
    done = 0

    async def run_one(index: int, args: tuple) -> None:
        nonlocal done
        results[index] = await anyio.to_process.run_sync(fn, *args, limiter=limiter)
        done += 1
        if progress is not None:
            progress(done, len(arg_tuples))

    async with anyio.create_task_group() as tg:
        for index, args in enumerate(arg_tuples):
            tg.start_soon(run_one, index, args)
    return results


def run_parallel(fn: Callable[..., Any], arg_tuples: Sequence[tuple], jobs: int,
                 progress: Optional[Progress] = None) -> List[Any]:
    """fn(*args) for every tuple, on up to `jobs` worker processes"""
    if jobs <= 1 or len(arg_tuples) <= 1:
        results = []
        for args in arg_tuples:
            results.append(fn(*args))
            if progress is not None:
                progress(len(results), len(arg_tuples))
        return results
    log.debug("dispatching %d tasks of %s to %d workers", len(arg_tuples), fn.__name__, jobs)
    return anyio.run(_map_async, fn, arg_tuples, jobs, progress)
