# Unless explicitly stated otherwise all files in this repository are licensed
# under the 3-clause BSD style license (see LICENSE).

from __future__ import annotations
from dataclasses import dataclass
from traceback import format_exc
from typing import TYPE_CHECKING, Callable, List, Optional, Sequence, TypeVar

from tqdm import tqdm
from tqdm.contrib.logging import logging_redirect_tqdm

from bandedge.utils.errors import NumericalError

if TYPE_CHECKING:
    from bandedge.utils.configuration import Configuration

T = TypeVar("T")
R = TypeVar("R")


class Workers:
    """Runs a sweep task by task with a progress bar.

    Tasks run one after the other: scipy's quadrature routines are not re-entrant.
    A failing task is logged, counted and leaves None in its slot.
    """

    def __init__(self, config: Configuration) -> None:
        self.config: Configuration = config
        self.counter: Counter = Counter()
        self.pbar: Optional[tqdm] = None

    def run(self, cb: Callable[[T], R], tasks: Sequence[T], desc: str = "") -> List[Optional[R]]:
        self.counter.reset_counter()
        results: List[Optional[R]] = []
        with logging_redirect_tqdm():
            self.pbar = tqdm(total=len(tasks), desc=desc, disable=not self.config.show_progress_bar, leave=False)
            try:
                for task in tasks:
                    results.append(self._run_one(cb, task))
                    self.pbar.update()
            finally:
                self.pbar.close()
                self.pbar = None
        self.config.logger.debug(str(self.counter), context=desc)
        return results

    def _run_one(self, cb: Callable[[T], R], task: T) -> Optional[R]:
        try:
            result = cb(task)
        except NumericalError as e:
            self.config.logger.debug(format_exc())
            self.config.logger.error(f"Error processing task {task!r}: {e}")
            self.counter.increment_failure()
            return None
        self.counter.increment_success()
        return result


@dataclass
class Counter:
    successes: int = 0
    failure: int = 0

    def __str__(self):
        return f"Successes: {self.successes}, Failures: {self.failure}"

    def reset_counter(self) -> None:
        self.successes = self.failure = 0

    def increment_success(self) -> None:
        self.successes += 1

    def increment_failure(self) -> None:
        self.failure += 1
