"""Thread runner for independent work units with ordered results and interrupts."""
import logging
import signal
import threading
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Generic, List, Optional, TypeVar

from ..errors import JobInterrupted

logger = logging.getLogger(__name__)

T = TypeVar("T")

ProgressCallback = Callable[[int, int], None]


class JobStatus(str, Enum):
    PENDING = "pending"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"
    INTERRUPTED = "interrupted"


@dataclass
class JobContext:
    """Context passed to each work unit."""
    unit: int
    unit_count: int
    worker: int
    should_stop: Callable[[], bool]


class JobRunner(Generic[T]):
    """Runs ``unit_count`` independent units on ``threads`` workers.

    Units are handed out in index order from a shared counter and their results
    are stored by index, so the returned list never depends on scheduling.
    """

    def __init__(self, threads: int = 1, progress_callback: Optional[ProgressCallback] = None,
                 handle_signals: bool = True):
        self.threads = max(1, int(threads))
        self.progress_callback = progress_callback
        self.handle_signals = handle_signals
        self.status = JobStatus.PENDING
        self.stop_requested = False
        self._lock = threading.Lock()
        self._next_unit = 0
        self._done = 0

    def request_stop(self) -> None:
        with self._lock:
            self.stop_requested = True

    def should_stop(self) -> bool:
        with self._lock:
            return self.stop_requested

    def _install_signal_handlers(self):
        if not self.handle_signals:
            return None

        def handler(signum, frame):
            logger.warning("interrupt received, finishing running units")
            self.request_stop()

        previous = {}
        try:
            for sig in (signal.SIGINT, signal.SIGTERM):
                previous[sig] = signal.signal(sig, handler)
        except ValueError:
            # not the main thread
            pass
        return previous

    @staticmethod
    def _restore_signal_handlers(previous) -> None:
        for sig, old in (previous or {}).items():
            try:
                signal.signal(sig, old)
            except ValueError:
                pass

    def _claim(self) -> Optional[int]:
        with self._lock:
            if self.stop_requested or self._next_unit >= self._unit_count:
                return None
            unit = self._next_unit
            self._next_unit += 1
            return unit

    def _finish(self) -> None:
        with self._lock:
            self._done += 1
            done = self._done
        if self.progress_callback:
            self.progress_callback(done, self._unit_count)

    def _work(self, worker: int, job_func: Callable[[JobContext], T], results: List, errors: List) -> None:
        while True:
            unit = self._claim()
            if unit is None:
                return
            context = JobContext(unit, self._unit_count, worker, self.should_stop)
            try:
                results[unit] = job_func(context)
            except BaseException as e:
                with self._lock:
                    errors.append(e)
                    self.stop_requested = True
                return
            logger.debug("worker %d finished unit %d/%d", worker, unit + 1, self._unit_count)
            self._finish()

    def run(self, unit_count: int, job_func: Callable[[JobContext], T]) -> List[T]:
        self._unit_count = int(unit_count)
        self._next_unit = 0
        self._done = 0
        self.stop_requested = False
        self.status = JobStatus.RUNNING
        results: List = [None] * self._unit_count
        errors: List[BaseException] = []

        previous = self._install_signal_handlers()
        try:
            workers = min(self.threads, max(1, self._unit_count))
            if workers == 1:
                self._work(0, job_func, results, errors)
            else:
                pool = [threading.Thread(target=self._work, args=(w, job_func, results, errors), daemon=True)
                        for w in range(workers)]
                for thread in pool:
                    thread.start()
                for thread in pool:
                    thread.join()
        finally:
            self._restore_signal_handlers(previous)

        if errors:
            self.status = JobStatus.FAILED
            raise errors[0]
        if self._done < self._unit_count:
            self.status = JobStatus.INTERRUPTED
            raise JobInterrupted(f"stopped after {self._done} of {self._unit_count} units")
        self.status = JobStatus.COMPLETED
        return results
