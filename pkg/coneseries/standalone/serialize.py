import hashlib
import json
from typing import Any, Callable, Tuple

import cloudpickle


def canonical_json(document: Any) -> str:
    """
    Render a JSON document with sorted keys and compact separators, so equal documents give identical text.

    Args:
        document: JSON compatible object, rationals already written as "p/q" strings

    Returns:
        str: canonical JSON text
    """
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def input_digest(document: Any) -> str:
    """sha256 of the canonical JSON text of a document."""
    return hashlib.sha256(canonical_json(document).encode("utf-8")).hexdigest()


def serialize_task(fn: Callable, fn_args: tuple = (), fn_kwargs: dict = {}) -> Tuple[str, dict]:
    """
    Serialize a function and its arguments into the task key and the data dictionary stored by the result cache.

    Args:
        fn (Callable): function to execute
        fn_args (tuple): positional arguments of the function
        fn_kwargs (dict): keyword arguments of the function

    Returns:
        Tuple[str, dict]: task key fn.__name__ + md5 of the pickled payload, and the data dictionary
    """
    binary_all = cloudpickle.dumps({"fn": fn, "args": fn_args, "kwargs": fn_kwargs})
    task_key = fn.__name__ + _get_hash(binary=binary_all)
    data = {"fn": fn, "args": fn_args, "kwargs": fn_kwargs}
    return task_key, data


def _get_hash(binary: bytes) -> str:
    return str(hashlib.md5(binary).hexdigest())
