"""
Truncated power series arithmetic and the Taylor coefficient oracle for algebraic series.
"""

import logging
from fractions import Fraction
from typing import List, Sequence

from coneseries.kernel.polynomial import BivariatePoly, UniPoly
from coneseries.kernel.rational import Number
from coneseries.standalone.errors import NotARoot, NotSimpleRoot, ZeroPolynomial

logger = logging.getLogger(__name__)


def series_mul(a: Sequence[Fraction], b: Sequence[Fraction], precision: int) -> List[Fraction]:
    result = [Fraction(0)] * precision
    for i, x in enumerate(a[:precision]):
        if x == 0:
            continue
        for j, y in enumerate(b[: precision - i]):
            result[i + j] += x * y
    return result


def series_inverse(a: Sequence[Fraction], precision: int) -> List[Fraction]:
    """Inverse of a power series with nonzero constant term modulo T**precision."""
    if len(a) == 0 or a[0] == 0:
        raise ZeroPolynomial("Only series with a nonzero constant term are invertible.")
    result = [Fraction(0)] * precision
    result[0] = 1 / Fraction(a[0])
    for k in range(1, precision):
        s = sum((a[i] * result[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        result[k] = -s * result[0]
    return result


def poly_as_series(p: UniPoly, precision: int) -> List[Fraction]:
    return [p.coefficient(i) for i in range(precision)]


def evaluate_bivariate(q: BivariatePoly, y: Sequence[Fraction], precision: int) -> List[Fraction]:
    """Q(T, y(T)) modulo T**precision by Horner's rule in Y."""
    result = [Fraction(0)] * precision
    for c in reversed(q.coefficients):
        result = series_mul(result, y, precision)
        result = [r + s for r, s in zip(result, poly_as_series(c, precision))]
    return result


def taylor_of_algebraic(q: BivariatePoly, y0: Number, degree: int) -> List[Fraction]:
    """
    First degree+1 Taylor coefficients of the power series root Y(T) of Q(T, Y) with Y(0) = y0.

    The root is computed by quadratic Newton iteration Y <- Y - Q(Y) / Q_Y(Y) on truncated series.

    Args:
        q (BivariatePoly): polynomial Q(T, Y)
        y0 (Fraction): simple root of Q(0, Y)
        degree (int): last coefficient index D

    Returns:
        list: coefficients a_0, ..., a_D
    """
    y0 = Fraction(y0)
    if q.at_t(0)(y0) != 0:
        raise NotARoot("Q(0, " + str(y0) + ") is not zero.")
    q_y = q.derivative_y()
    if q_y.at_t(0)(y0) == 0:
        raise NotSimpleRoot("dQ/dY vanishes at (0, " + str(y0) + ").")
    target = degree + 1
    y = [y0]
    precision = 1
    steps = 0
    while precision < target:
        precision = min(2 * precision, target)
        y = y + [Fraction(0)] * (precision - len(y))
        value = evaluate_bivariate(q, y, precision)
        slope = evaluate_bivariate(q_y, y, precision)
        correction = series_mul(value, series_inverse(slope, precision), precision)
        y = [a - b for a, b in zip(y, correction)]
        steps += 1
    logger.debug("Newton iteration reached %d coefficients in %d steps", target, steps)
    return y[:target]
