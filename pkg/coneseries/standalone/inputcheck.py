from math import gcd
from typing import Optional, Sequence

from coneseries.standalone.config import default_settings
from coneseries.standalone.errors import (
    DimensionMismatch,
    DimensionUnsupported,
    NonPositiveOmega,
    UsageError,
    WindowTooLarge,
)


def check_dimension_supported(n: int, max_dimension: Optional[int] = None) -> None:
    """
    Check if the ambient dimension is small enough for exact cone computations and raise a DimensionUnsupported
    error if it is not.
    """
    if max_dimension is None:
        max_dimension = default_settings["max_dimension"]
    if n > max_dimension:
        raise DimensionUnsupported(
            "Dual cones are computed for ambient dimension at most "
            + str(max_dimension)
            + ", got dimension "
            + str(n)
            + "."
        )


def check_vector_dimension(vector: Sequence, n: int) -> None:
    """
    Check if the vector has n coordinates and raise a DimensionMismatch error if it does not.
    """
    if len(vector) != n:
        raise DimensionMismatch(
            "Expected a vector with " + str(n) + " coordinates, got " + str(len(vector)) + "."
        )


def check_positive_omega(omega: Sequence) -> None:
    """
    Check if every coordinate of the weight vector is strictly positive and raise a NonPositiveOmega error if not.
    """
    if len(omega) == 0 or any(w <= 0 for w in omega):
        raise NonPositiveOmega(
            "The weight vector " + str([str(w) for w in omega]) + " needs strictly positive coordinates."
        )


def check_primitive(vector: Sequence[int]) -> None:
    """
    Check if an integer vector is primitive (coprime coordinates) and raise a UsageError if it is not.
    """
    g = 0
    for x in vector:
        g = gcd(g, abs(int(x)))
    if g != 1:
        raise UsageError("The direction " + str(list(vector)) + " is not a primitive lattice vector.")


def check_ramification(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise UsageError("The ramification index must be an integer >= 1, got " + str(k) + ".")


def check_strictly_increasing(values: Sequence[int]) -> None:
    """
    Check if the integer sequence is strictly increasing and raise a UsageError if it is not.
    """
    if any(b <= a for a, b in zip(values, values[1:])):
        raise UsageError("The index values " + str(list(values)) + " are not strictly increasing.")


def check_point_count(count: int, max_points: Optional[int] = None) -> None:
    """
    Check if the number of points to materialize stays below the configured cap and raise a WindowTooLarge error if
    it does not.
    """
    if max_points is None:
        max_points = default_settings["max_points"]
    if count > max_points:
        raise WindowTooLarge(
            "Materializing "
            + str(count)
            + " points exceeds the cap of "
            + str(max_points)
            + " (set CONESERIES_MAX_POINTS to raise it)."
        )


def check_max_workers(max_workers: int) -> None:
    if not isinstance(max_workers, int) or max_workers < 1:
        raise UsageError("The number of workers must be an integer >= 1, got " + str(max_workers) + ".")
