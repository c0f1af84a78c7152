"""
Differential equations of algebraic power series.

Derivatives of a root Y of Q(T, Y) live in Q(T)[Y]/(Q) of dimension deg_Y Q over Q(T), so at most deg_Y Q + 1 of
them are linearly dependent. The first dependency gives the equation.
"""

import logging
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import List, Optional

import sympy

from coneseries.dfinite.recurrence import LinearODE
from coneseries.kernel.linalg import ratfun_kernel
from coneseries.kernel.polynomial import SYMBOL_T, SYMBOL_Y, BivariatePoly, RatFun, UniPoly
from coneseries.kernel.taylor import taylor_of_algebraic
from coneseries.standalone.errors import ConeSeriesError, NotSquarefree, ZeroPolynomial

logger = logging.getLogger(__name__)

_FIELD = sympy.QQ.frac_field(SYMBOL_T)


def _to_ratfun(expr) -> RatFun:
    num, den = sympy.fraction(sympy.cancel(sympy.sympify(expr)))
    return RatFun(
        UniPoly.from_sympy(sympy.Poly(num, SYMBOL_T, domain=sympy.QQ)),
        UniPoly.from_sympy(sympy.Poly(den, SYMBOL_T, domain=sympy.QQ)),
    )


def _coordinates(element: sympy.Poly, degree: int) -> List[RatFun]:
    coefficients = element.all_coeffs()[::-1]
    result = []
    for i in range(degree):
        if i < len(coefficients):
            result.append(_to_ratfun(coefficients[i]))
        else:
            result.append(RatFun(UniPoly()))
    return result


def _poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    return (a * b) // a.gcd(b)


def _normalize(vector) -> LinearODE:
    den = reduce(_poly_lcm, (e.den for e in vector), UniPoly.constant(1))
    polys = [e.num * (den // e.den) for e in vector]
    scale = reduce(lcm, (c.denominator for p in polys for c in p.coefficients), 1)
    polys = [p * scale for p in polys]
    content = reduce(gcd, (abs(c.numerator) for p in polys for c in p.coefficients), 0)
    polys = [p * Fraction(1, content) for p in polys]
    top = next(p for p in reversed(polys) if not p.is_zero())
    if top.coefficient(top.order) < 0:
        polys = [-p for p in polys]
    return LinearODE(tuple(polys))


def algebraic_to_ode(q: BivariatePoly, y0: Optional[Fraction] = None, check_terms: int = 10) -> LinearODE:
    """
    Linear differential equation with polynomial coefficients annihilating every power series root of Q.

    Y' = -Q_T / Q_Y is reduced modulo Q in Q(T)[Y]; successive derivatives are written in the basis 1, Y, ...,
    Y^(d-1) and the first Q(T)-linear dependency among Y, Y', Y'', ... is returned with polynomial coefficients.

    Args:
        q (BivariatePoly): minimal polynomial, squarefree in Y
        y0 (Fraction, optional): constant term of a branch; when given the equation is checked on its Taylor prefix
        check_terms (int): number of coefficients of the check

    Returns:
        LinearODE: equation of order at most deg_Y Q
    """
    if q.degree_y < 1:
        raise ZeroPolynomial("The minimal polynomial must have positive degree in Y.")
    if not q.is_squarefree():
        raise NotSquarefree("Q(T, Y) shares a factor with dQ/dY.")
    d = q.degree_y
    expr = q.to_sympy().as_expr()
    modulus = sympy.Poly(expr, SYMBOL_Y, domain=_FIELD)
    q_y = sympy.Poly(sympy.diff(expr, SYMBOL_Y), SYMBOL_Y, domain=_FIELD)
    q_t = sympy.Poly(sympy.diff(expr, SYMBOL_T), SYMBOL_Y, domain=_FIELD)
    y_prime = (-q_t * q_y.invert(modulus)).rem(modulus)
    y_prime_expr = y_prime.as_expr()
    current = sympy.Poly(SYMBOL_Y, SYMBOL_Y, domain=_FIELD).rem(modulus)
    columns = [_coordinates(current, d)]
    ode = None
    for order in range(1, d + 1):
        e = current.as_expr()
        derivative = sympy.diff(e, SYMBOL_T) + sympy.diff(e, SYMBOL_Y) * y_prime_expr
        current = sympy.Poly(sympy.together(derivative), SYMBOL_Y, domain=_FIELD).rem(modulus)
        columns.append(_coordinates(current, d))
        matrix = [[column[i] for column in columns] for i in range(d)]
        kernel = ratfun_kernel(matrix)
        if kernel:
            ode = _normalize(kernel[0])
            logger.debug("dependency found among the first %d derivatives", order + 1)
            break
    if y0 is not None:
        terms = taylor_of_algebraic(q, y0, check_terms + ode.order)
        if any(r != 0 for r in ode.apply(terms)):
            raise ConeSeriesError("The derived equation does not annihilate the branch with Y(0) = " + str(y0) + ".")
    return ode
