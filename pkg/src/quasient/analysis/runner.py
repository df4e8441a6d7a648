"""Parallel execution of independent scan items."""

from __future__ import annotations

import asyncio
import logging
import os
from collections.abc import Callable, Sequence
from typing import TypeVar

from quasient.settings import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class ScanRunner:
    """Fans work items out to worker threads and collects results in input order.

    numpy and scipy release the GIL inside their linear algebra kernels, so
    threads overlap the expensive eigendecompositions. With one worker the
    items run serially in the calling thread.
    """

    def __init__(self, workers: int | None = None) -> None:
        """Initialize runner.

        Args:
            workers: Worker count; None reads QUASIENT_THREADS (0 = all cores)
        """
        if workers is None:
            workers = get_settings().resolved_threads()
        elif workers == 0:
            workers = os.cpu_count() or 1
        self.workers = max(1, workers)
        self._semaphore: asyncio.Semaphore | None = None

    def _get_semaphore(self) -> asyncio.Semaphore:
        """Get or create semaphore for parallel execution."""
        if self._semaphore is None:
            self._semaphore = asyncio.Semaphore(self.workers)
        return self._semaphore

    async def _run_item(self, fn: Callable[[T], R], item: T) -> R:
        async with self._get_semaphore():
            return await asyncio.to_thread(fn, item)

    async def gather(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        """Run ``fn`` over ``items`` on worker threads inside a running event loop."""
        self._semaphore = None
        return list(await asyncio.gather(*[self._run_item(fn, item) for item in items]))

    def map(self, fn: Callable[[T], R], items: Sequence[T]) -> list[R]:
        """Apply ``fn`` to every item; results follow the order of ``items``."""
        items = list(items)
        if self.workers == 1 or len(items) <= 1:
            return [fn(item) for item in items]
        logger.debug("Running %d items on %d workers", len(items), self.workers)
        return asyncio.run(self.gather(fn, items))
