"""
Rational numbers and exact vectors.

Rationals are ``fractions.Fraction`` values, lattice vectors are tuples of ``int`` and rational vectors are tuples of
``Fraction``. All helpers return new tuples, values are never mutated.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Tuple, Union

from coneseries.standalone.errors import DimensionMismatch, UsageError

Rational = Fraction
LatticeVector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]
Number = Union[int, Fraction]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """
    Parse a rational written as ``"p/q"`` or ``"p"``.

    Args:
        text (str): rational in canonical text form, integers and Fractions are passed through

    Returns:
        Fraction: parsed value
    """
    if isinstance(text, bool):
        raise UsageError("Booleans are not rationals.")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str) or "." in text or "e" in text.lower():
        raise UsageError("Rationals are written as 'p/q' strings, got " + repr(text) + ".")
    try:
        return Fraction(text.strip())
    except ValueError:
        raise UsageError("Could not parse rational " + repr(text) + ".")


def format_rational(value: Number) -> str:
    return str(Fraction(value))


def parse_vector(text: str) -> RationalVector:
    """
    Parse a comma separated list of rationals, for example ``"1,2"`` or ``"1/2,-3"``.
    """
    return tuple(parse_rational(part) for part in text.split(",") if part.strip() != "")


def as_rational_vector(values: Iterable[Number]) -> RationalVector:
    return tuple(Fraction(v) for v in values)


def as_lattice_vector(values: Iterable[Number]) -> LatticeVector:
    result = []
    for v in values:
        f = Fraction(v)
        if f.denominator != 1:
            raise UsageError("Lattice vectors have integer coordinates, got " + str(f) + ".")
        result.append(f.numerator)
    return tuple(result)


def check_same_dimension(*vectors: Sequence) -> int:
    dims = {len(v) for v in vectors}
    if len(dims) != 1:
        raise DimensionMismatch(
            "Vectors of different dimensions " + str(sorted(dims)) + " cannot be combined."
        )
    return dims.pop()


def dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    check_same_dimension(u, v)
    return sum((a * b for a, b in zip(u, v)), 0)


def add(u: Sequence[Number], v: Sequence[Number]) -> tuple:
    check_same_dimension(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Number], v: Sequence[Number]) -> tuple:
    check_same_dimension(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Number, v: Sequence[Number]) -> tuple:
    return tuple(c * a for a in v)


def is_zero(v: Sequence[Number]) -> bool:
    return all(a == 0 for a in v)


def common_denominator(values: Iterable[Number]) -> int:
    return reduce(lcm, (Fraction(v).denominator for v in values), 1)


def primitive(v: Sequence[Number]) -> LatticeVector:
    """
    Scale a nonzero rational vector by a positive factor to the primitive integer vector on the same ray.

    Args:
        v (Sequence): rational or integer coordinates

    Returns:
        tuple: coprime integer coordinates, the zero vector is returned unchanged
    """
    den = common_denominator(v)
    ints = [int(Fraction(a) * den) for a in v]
    g = reduce(gcd, (abs(a) for a in ints), 0)
    if g == 0:
        return tuple(0 for _ in ints)
    return tuple(a // g for a in ints)


def is_primitive(v: Sequence[int]) -> bool:
    return reduce(gcd, (abs(int(a)) for a in v), 0) == 1


def unit_vector(n: int, i: int) -> LatticeVector:
    return tuple(1 if j == i else 0 for j in range(n))


def floor_div(a: Number, b: Number) -> int:
    """Exact floor of a / b for rationals with b != 0."""
    q = Fraction(a) / Fraction(b)
    return q.numerator // q.denominator


def ceil_div(a: Number, b: Number) -> int:
    return -floor_div(-Fraction(a), b)
