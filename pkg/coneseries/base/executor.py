import logging
import os
import queue
import uuid
from concurrent.futures import Executor as FutureExecutor
from concurrent.futures import Future
from typing import Callable, List, Optional

from coneseries.standalone.config import get_settings
from coneseries.standalone.inputcheck import check_max_workers
from coneseries.standalone.queue import cancel_items_in_queue
from coneseries.standalone.serialize import serialize_task
from coneseries.standalone.thread import RaisingThread

logger = logging.getLogger(__name__)


class ExecutorBase(FutureExecutor):
    """
    Base class of the executors: tasks are put on a queue as dictionaries {"fn", "args", "kwargs", "future"} and
    consumed by worker threads.
    """

    def __init__(self):
        self._future_queue: Optional[queue.Queue] = queue.Queue()
        self._process: List[RaisingThread] = []

    @property
    def info(self) -> Optional[dict]:
        """Keyword arguments of the workers together with their number, None after shutdown."""
        if not self._process:
            return None
        meta_data_dict = self._process[0].get_kwargs().copy()
        meta_data_dict.pop("future_queue", None)
        meta_data_dict["max_workers"] = len(self._process)
        return meta_data_dict

    @property
    def future_queue(self) -> Optional[queue.Queue]:
        return self._future_queue

    def submit(self, fn: Callable, *args, **kwargs) -> Future:  # type: ignore
        """
        Schedule fn(*args, **kwargs) and return a Future representing its result.

        Args:
            fn (callable): function to execute
            args: positional arguments
            kwargs: keyword arguments

        Returns:
            Future: result of the call
        """
        f: Future = Future()
        if self._future_queue is None:
            raise RuntimeError("cannot schedule new tasks after shutdown")
        self._future_queue.put({"fn": fn, "args": args, "kwargs": kwargs, "future": f})
        return f

    def shutdown(self, wait: bool = True, *, cancel_futures: bool = False):
        """
        Stop the workers. It is safe to call this method several times.

        Args:
            wait (bool): wait until every running task finished
            cancel_futures (bool): cancel the tasks which have not started yet
        """
        if cancel_futures and self._future_queue is not None:
            cancel_items_in_queue(que=self._future_queue)
        if self._process and self._future_queue is not None:
            for _ in self._process:
                self._future_queue.put({"shutdown": True, "wait": wait})
            if wait:
                for process in self._process:
                    process.join()
                self._future_queue.join()
        self._process = []
        self._future_queue = None

    def _set_process(self, process: List[RaisingThread]):
        self._process = process
        for p in self._process:
            p.start()

    def __len__(self) -> int:
        """Number of tasks waiting in the queue."""
        if self._future_queue is None:
            return 0
        return self._future_queue.qsize()

    def __del__(self):
        try:
            self.shutdown(wait=False)
        except (AttributeError, RuntimeError):
            pass


class BatchExecutor(ExecutorBase):
    """
    Thread pool for independent exact computations, with an optional on-disk cache of results.

    Args:
        max_workers (int): number of worker threads, defaults to the max_workers setting
        cache_directory (str, optional): directory of the HDF5 result cache, defaults to the cache_directory setting

    Examples:

        >>> from coneseries.base.executor import BatchExecutor
        >>>
        >>> with BatchExecutor(max_workers=2) as exe:
        >>>     fs = [exe.submit(pow, 2, i) for i in range(4)]
        >>>     print([f.result() for f in fs])
        [1, 2, 4, 8]
    """

    def __init__(self, max_workers: Optional[int] = None, cache_directory: Optional[str] = None):
        super().__init__()
        settings = get_settings(max_workers=max_workers, cache_directory=cache_directory)
        check_max_workers(max_workers=settings["max_workers"])
        self._set_process(
            [
                RaisingThread(
                    target=execute_tasks,
                    kwargs={
                        "future_queue": self._future_queue,
                        "cache_directory": settings["cache_directory"],
                    },
                )
                for _ in range(settings["max_workers"])
            ]
        )

    def map_ordered(self, fn: Callable, iterable) -> list:
        """Results of fn on every item, collected in submission order."""
        futures = [self.submit(fn, item) for item in iterable]
        return [f.result() for f in futures]


def execute_tasks(future_queue: queue.Queue, cache_directory: Optional[str] = None) -> None:
    """
    Worker loop: execute task dictionaries from the queue until a shutdown message arrives.

    Args:
        future_queue (queue.Queue): queue of task dictionaries
        cache_directory (str, optional): directory of the HDF5 result cache
    """
    while True:
        task_dict = future_queue.get()
        if "shutdown" in task_dict.keys() and task_dict["shutdown"]:
            future_queue.task_done()
            break
        elif "fn" in task_dict.keys() and "future" in task_dict.keys():
            if cache_directory is None:
                _execute_task(task_dict=task_dict)
            else:
                _execute_task_with_cache(task_dict=task_dict, cache_directory=cache_directory)
            future_queue.task_done()


def _execute_task(task_dict: dict) -> None:
    f = task_dict.pop("future")
    if f.set_running_or_notify_cancel():
        try:
            f.set_result(task_dict["fn"](*task_dict["args"], **task_dict["kwargs"]))
        except Exception as thread_exception:
            f.set_exception(exception=thread_exception)


def _execute_task_with_cache(task_dict: dict, cache_directory: str) -> None:
    """
    Execute a task unless its result is already stored in the cache directory. The result is written to a temporary
    file which is renamed into place, so concurrent workers never see a partial cache entry.

    Args:
        task_dict (dict): {"fn": Callable, "args": (), "kwargs": {}, "future": Future}
        cache_directory (str): directory of the HDF5 result cache
    """
    from coneseries.standalone.hdf import dump, get_output

    f = task_dict.pop("future")
    if not f.set_running_or_notify_cancel():
        return
    try:
        task_key, data_dict = serialize_task(
            fn=task_dict["fn"], fn_args=task_dict["args"], fn_kwargs=task_dict["kwargs"]
        )
        os.makedirs(cache_directory, exist_ok=True)
        file_name = os.path.join(cache_directory, task_key + ".h5out")
        found = False
        if os.path.exists(file_name):
            try:
                found, result = get_output(file_name=file_name)
            except OSError:
                logger.warning("unreadable cache file %s is recomputed", file_name)
        if found:
            logger.debug("cache hit for %s", task_key)
        else:
            result = task_dict["fn"](*task_dict["args"], **task_dict["kwargs"])
    except Exception as thread_exception:
        f.set_exception(exception=thread_exception)
        return
    if not found:
        data_dict["output"] = result
        temporary = file_name + "." + uuid.uuid4().hex + ".tmp"
        try:
            dump(file_name=temporary, data_dict=data_dict)
            os.replace(temporary, file_name)
        except Exception:
            logger.warning("the result of %s is not cached", task_key, exc_info=True)
            if os.path.exists(temporary):
                os.remove(temporary)
    f.set_result(result)
