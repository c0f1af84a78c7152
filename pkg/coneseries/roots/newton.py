"""
Polynomials over Laurent series and the omega-Newton polygon of their monomial initial roots.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

import sympy

from coneseries.kernel.rational import (
    RationalVector,
    as_rational_vector,
    dot,
    format_rational,
    parse_rational,
    scale,
    sub,
)
from coneseries.series.laurent import LaurentSeriesValue, initial_part
from coneseries.standalone.errors import DegenerateInitialForm, DimensionMismatch, UsageError
from coneseries.standalone.inputcheck import check_vector_dimension

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyOverSeries:
    """P(T) = sum_i coefficients[i] * T^i with Laurent series coefficients."""

    coefficients: Tuple[LaurentSeriesValue, ...]

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while coefficients and coefficients[-1].is_zero():
            coefficients.pop()
        if len(coefficients) < 2:
            raise UsageError("A polynomial over series needs degree >= 1 in T.")
        dim = coefficients[0].dim
        if any(a.dim != dim for a in coefficients):
            raise DimensionMismatch("The coefficients of a polynomial over series share one dimension.")
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def dim(self) -> int:
        return self.coefficients[0].dim

    def to_json(self) -> List[dict]:
        return [a.to_json() for a in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence) -> "PolyOverSeries":
        if not isinstance(data, (list, tuple)):
            raise UsageError("A polynomial over series is a list of series documents, one per power of T.")
        return cls(tuple(LaurentSeriesValue.from_json(a) for a in data))


@dataclass(frozen=True)
class InitialRoot:
    """Monomial c * x^alpha solving the omega-initial equation, alpha.omega = t."""

    t: Fraction
    alpha: RationalVector
    c: Fraction
    multiplicity: int
    ramification: int

    def to_json(self) -> dict:
        return {
            "t": format_rational(self.t),
            "alpha": [format_rational(x) for x in self.alpha],
            "c": format_rational(self.c),
            "multiplicity": self.multiplicity,
            "ramification": self.ramification,
        }

    @classmethod
    def from_json(cls, data: dict) -> "InitialRoot":
        try:
            alpha = tuple(parse_rational(x) for x in data["alpha"])
            return cls(
                parse_rational(data["t"]),
                alpha,
                parse_rational(data["c"]),
                int(data.get("multiplicity", 1)),
                int(data.get("ramification", lcm(*(x.denominator for x in alpha)))),
            )
        except (KeyError, TypeError):
            raise UsageError('An initial root document has the keys "t", "alpha" and "c".')


def monomial_initials(p: PolyOverSeries, omega: RationalVector) -> List[Tuple[int, RationalVector, Fraction]]:
    """
    The omega-initial monomial (i, alpha_i, c_i) of every nonzero coefficient.

    Raises DegenerateInitialForm when an initial part has more than one term.
    """
    result = []
    for i, a in enumerate(p.coefficients):
        if a.is_zero():
            continue
        initial = initial_part(a, omega)
        if initial.rays or len(initial.terms) != 1:
            raise DegenerateInitialForm(
                "The omega-initial part of the coefficient of T^" + str(i) + " is not a single monomial."
            )
        exponent, c = initial.terms[0]
        result.append((i, tuple(Fraction(x, a.ramification) for x in exponent), c))
    return result


def _lower_hull(points: List[Tuple[int, Fraction]]) -> List[Tuple[int, Fraction]]:
    hull: List[Tuple[int, Fraction]] = []
    for p in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _rational_roots(coefficients: dict) -> List[Tuple[Fraction, int]]:
    z = sympy.Symbol("z")
    expr = sum((sympy.Rational(c.numerator, c.denominator) * z**i for i, c in coefficients.items()), sympy.Integer(0))
    roots = sympy.roots(sympy.Poly(expr, z, domain=sympy.QQ), filter="Q")
    return sorted((Fraction(int(r.p), int(r.q)), m) for r, m in roots.items() if r != 0)


def newton_polygon_initials(p: PolyOverSeries, omega: Sequence) -> List[InitialRoot]:
    """
    Monomial initial roots c * x^alpha of P for the weight omega.

    Every edge of the lower convex hull of the points (i, nu_omega(a_i)) gives a slope t where min_i nu_omega(a_i) +
    i * t is attained at least twice. On the set E of minimizing indices the initial equation
    sum_{i in E} In(a_i) * (c * x^alpha)^i = 0 only has solutions when the exponents alpha_i + i * alpha coincide,
    which fixes alpha; the values c are the nonzero rational roots of sum_{i in E} c_i * z^i.

    Args:
        p (PolyOverSeries): polynomial whose coefficients have single-monomial initial parts
        omega (Sequence): rational weight vector

    Returns:
        list: InitialRoot records sorted by t and c
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, p.dim)
    initials = monomial_initials(p, omega)
    by_index = {i: (alpha, c) for i, alpha, c in initials}
    nu = {i: Fraction(dot(omega, alpha)) for i, (alpha, _) in by_index.items()}
    hull = _lower_hull([(i, nu[i]) for i in by_index])
    result = []
    for (i1, y1), (i2, y2) in zip(hull, hull[1:]):
        t = -(y2 - y1) / (i2 - i1)
        level = min(nu[i] + i * t for i in by_index)
        edge = sorted(i for i in by_index if nu[i] + i * t == level)
        alpha = scale(Fraction(1, i2 - i1), sub(by_index[i1][0], by_index[i2][0]))
        anchor = tuple(a + i1 * x for a, x in zip(by_index[i1][0], alpha))
        if any(tuple(a + i * x for a, x in zip(by_index[i][0], alpha)) != anchor for i in edge):
            logger.debug("slope %s has no monomial solution", t)
            continue
        ramification = lcm(*(x.denominator for x in alpha))
        for c, multiplicity in _rational_roots({i - edge[0]: by_index[i][1] for i in edge}):
            result.append(InitialRoot(t, alpha, c, multiplicity, ramification))
    return sorted(result, key=lambda r: (r.t, r.c))
