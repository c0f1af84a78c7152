import os
import shutil
import threading
import unittest
from concurrent.futures import CancelledError, Future
from queue import Queue

from coneseries.base.executor import BatchExecutor
from coneseries.standalone.errors import UsageError
from coneseries.standalone.inputcheck import check_max_workers
from coneseries.standalone.queue import cancel_items_in_queue
from coneseries.standalone.serialize import canonical_json, input_digest, serialize_task
from coneseries.standalone.thread import RaisingThread

try:
    from coneseries.standalone.hdf import dump, get_output

    skip_h5py_test = False
except ImportError:
    skip_h5py_test = True


def my_funct(a, b):
    return a + b


def raise_error():
    raise ValueError


def make_lock(i):
    return threading.Lock()


class TestBatchExecutor(unittest.TestCase):
    def test_submit(self):
        with BatchExecutor(max_workers=2) as exe:
            fs = [exe.submit(pow, 2, i) for i in range(4)]
            self.assertEqual([f.result() for f in fs], [1, 2, 4, 8])
            self.assertEqual(exe.info["max_workers"], 2)

    def test_map_ordered(self):
        with BatchExecutor(max_workers=3) as exe:
            self.assertEqual(exe.map_ordered(abs, [-3, 2, -1, 0]), [3, 2, 1, 0])

    def test_exception(self):
        with BatchExecutor(max_workers=1) as exe:
            f = exe.submit(my_funct, 1, "a")
            with self.assertRaises(TypeError):
                f.result()

    def test_shutdown(self):
        exe = BatchExecutor(max_workers=1)
        exe.shutdown(wait=True)
        self.assertIsNone(exe.info)
        self.assertEqual(len(exe), 0)
        with self.assertRaises(RuntimeError):
            exe.submit(my_funct, 1, 2)
        exe.shutdown(wait=True)

    def test_max_workers(self):
        with self.assertRaises(UsageError):
            BatchExecutor(max_workers=0)
        with self.assertRaises(UsageError):
            check_max_workers(max_workers=1.5)
        check_max_workers(max_workers=4)


class TestQueue(unittest.TestCase):
    def test_cancel_items_in_queue(self):
        q = Queue()
        fs1 = Future()
        fs2 = Future()
        q.put({"future": fs1})
        q.put({"future": fs2})
        cancel_items_in_queue(que=q)
        self.assertEqual(q.qsize(), 0)
        self.assertTrue(fs1.done())
        with self.assertRaises(CancelledError):
            fs1.result()
        self.assertTrue(fs2.done())
        q.join()


class TestRaisingThread(unittest.TestCase):
    def test_raising_thread(self):
        with self.assertRaises(ValueError):
            process = RaisingThread(target=raise_error)
            process.start()
            process.join()


class TestSerialize(unittest.TestCase):
    def test_task_key(self):
        key, data = serialize_task(fn=my_funct, fn_args=(1,), fn_kwargs={"b": 2})
        self.assertTrue(key.startswith("my_funct"))
        self.assertEqual(len(key), len("my_funct") + 32)
        self.assertEqual(data["args"], (1,))
        self.assertEqual(serialize_task(fn=my_funct, fn_args=(1,), fn_kwargs={"b": 2})[0], key)
        self.assertNotEqual(serialize_task(fn=my_funct, fn_args=(2,), fn_kwargs={"b": 2})[0], key)

    def test_canonical_json(self):
        self.assertEqual(canonical_json({"b": ["1/2"], "a": 1}), '{"a":1,"b":["1/2"]}')
        self.assertEqual(input_digest({"a": 1, "b": 2}), input_digest({"b": 2, "a": 1}))
        self.assertEqual(len(input_digest([])), 64)


@unittest.skipIf(skip_h5py_test, "h5py is not installed, so the cache tests are skipped.")
class TestCache(unittest.TestCase):
    def setUp(self):
        self.cache_directory = os.path.abspath("cache")
        os.makedirs(self.cache_directory, exist_ok=True)

    def tearDown(self):
        shutil.rmtree(self.cache_directory, ignore_errors=True)

    def test_hdf(self):
        file_name = os.path.join(self.cache_directory, "test_mixed.h5")
        dump(file_name=file_name, data_dict={"fn": my_funct, "args": [1], "kwargs": {"b": 2}})
        self.assertEqual(get_output(file_name=file_name), (False, None))
        dump(file_name=file_name, data_dict={"output": 3})
        self.assertEqual(get_output(file_name=file_name), (True, 3))

    def test_cached_results(self):
        with BatchExecutor(max_workers=1, cache_directory=self.cache_directory) as exe:
            first = exe.map_ordered(abs, [-1, -2])
        files = sorted(os.listdir(self.cache_directory))
        self.assertEqual(len(files), 2)
        self.assertTrue(all(f.startswith("abs") and f.endswith(".h5out") for f in files))
        with BatchExecutor(max_workers=2, cache_directory=self.cache_directory) as exe:
            self.assertEqual(exe.map_ordered(abs, [-1, -2]), first)
        self.assertEqual(sorted(os.listdir(self.cache_directory)), files)

    def test_same_task_on_two_workers(self):
        with BatchExecutor(max_workers=2, cache_directory=self.cache_directory) as exe:
            self.assertEqual(exe.map_ordered(abs, [-4] * 6), [4] * 6)
        files = os.listdir(self.cache_directory)
        self.assertEqual(len(files), 1)
        self.assertTrue(files[0].endswith(".h5out"))

    def test_result_without_pickle(self):
        with BatchExecutor(max_workers=1, cache_directory=self.cache_directory) as exe:
            f = exe.submit(make_lock, 1)
            self.assertTrue(hasattr(f.result(timeout=30), "acquire"))
            self.assertEqual(exe.submit(abs, -1).result(timeout=30), 1)
        self.assertEqual([name for name in os.listdir(self.cache_directory) if name.startswith("make_lock")], [])

    def test_cache_file_without_output(self):
        key, _ = serialize_task(fn=abs, fn_args=(-5,), fn_kwargs={})
        file_name = os.path.join(self.cache_directory, key + ".h5out")
        dump(file_name=file_name, data_dict={"fn": abs, "args": (-5,), "kwargs": {}})
        with BatchExecutor(max_workers=1, cache_directory=self.cache_directory) as exe:
            self.assertEqual(exe.submit(abs, -5).result(timeout=30), 5)
        self.assertEqual(get_output(file_name=file_name), (True, 5))
