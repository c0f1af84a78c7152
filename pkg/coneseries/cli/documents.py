"""
Readers and writers of the JSON documents exchanged on the command line. Every reader accepts a file path, "-" for
standard input, or the JSON text itself, and raises UsageError on malformed input.
"""

import json
import os
import sys
from typing import Any, TextIO

from coneseries.dfinite.recurrence import LinearODE, PRecurrence
from coneseries.geometry.cone import Cone
from coneseries.kernel.polynomial import BivariatePoly
from coneseries.orders.order import VectorOrder
from coneseries.roots.newton import PolyOverSeries
from coneseries.series.laurent import LaurentSeriesValue, RaySeries
from coneseries.standalone.errors import UsageError
from coneseries.standalone.serialize import canonical_json
from coneseries.support.spec import SupportSpec


def load_document(source: str) -> Any:
    """
    Load a JSON document.

    Args:
        source (str): path of a JSON file, "-" for standard input, or inline JSON starting with "{" or "["

    Returns:
        parsed document
    """
    text = source.strip()
    if text == "-":
        content = sys.stdin.read()
    elif text.startswith("{") or text.startswith("["):
        content = text
    elif os.path.exists(source):
        with open(source) as f:
            content = f.read()
    else:
        raise UsageError("No such input file " + repr(source) + ".")
    try:
        return json.loads(content)
    except json.JSONDecodeError as error:
        raise UsageError("Malformed JSON in " + repr(source[:40]) + ": " + str(error))


def read_cone(source: str) -> Cone:
    return Cone.from_json(load_document(source))


def read_order(source: str) -> VectorOrder:
    return VectorOrder.from_json(load_document(source))


def read_support(source: str) -> SupportSpec:
    return SupportSpec.from_json(load_document(source))


def read_series(source: str) -> LaurentSeriesValue:
    return LaurentSeriesValue.from_json(load_document(source))


def read_poly_over_series(source: str) -> PolyOverSeries:
    return PolyOverSeries.from_json(load_document(source))


def read_bivariate(source: str) -> BivariatePoly:
    return BivariatePoly.from_json(load_document(source))


def read_ode(source: str) -> LinearODE:
    return LinearODE.from_json(load_document(source))


def read_recurrence(source: str) -> PRecurrence:
    return PRecurrence.from_json(load_document(source))


def read_ray_series(source: str) -> RaySeries:
    data = load_document(source)
    if not isinstance(data, dict):
        raise UsageError("A ray series document is a JSON object.")
    return RaySeries.from_json(data)


def write_document(document: Any, stream: TextIO) -> None:
    stream.write(canonical_json(document) + "\n")


def write_document_file(document: Any, file_name: str) -> None:
    with open(file_name, "w") as f:
        write_document(document, f)
