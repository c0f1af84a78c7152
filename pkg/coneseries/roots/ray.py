"""
Lifts living on one lattice ray x^gamma * F(x^v) and the certified support derived from the ray's minimal polynomial.
"""

import logging
from fractions import Fraction
from functools import reduce
from typing import List, Optional, Sequence, Tuple

import sympy

from coneseries.dfinite.ode import algebraic_to_ode
from coneseries.dfinite.recurrence import gap_constant, ode_to_recurrence
from coneseries.kernel.polynomial import SYMBOL_T, SYMBOL_Y, BivariatePoly
from coneseries.kernel.rational import LatticeVector, as_lattice_vector, dot, floor_div, primitive, sub
from coneseries.kernel.taylor import taylor_of_algebraic
from coneseries.roots.hensel import LiftResult
from coneseries.roots.newton import PolyOverSeries
from coneseries.series.laurent import retruncate
from coneseries.standalone.errors import ConeSeriesError, UsageError
from coneseries.standalone.inputcheck import check_primitive, check_vector_dimension
from coneseries.support.indexset import BoundedGapTail, Explicit
from coneseries.support.spec import Ray, SupportSpec

logger = logging.getLogger(__name__)


def unimodular_completion(v: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """
    Unimodular integer matrix M with M v = e_n for a primitive vector v, built by Euclidean row operations.
    """
    check_primitive(v)
    n = len(v)
    w = [int(x) for x in v]
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    while sum(1 for x in w if x != 0) > 1:
        nonzero = sorted((i for i, x in enumerate(w) if x != 0), key=lambda i: abs(w[i]))
        j, i = nonzero[0], nonzero[-1]
        q = w[i] // w[j]
        w[i] -= q * w[j]
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
    p = next(i for i, x in enumerate(w) if x != 0)
    w[p], w[n - 1] = w[n - 1], w[p]
    m[p], m[n - 1] = m[n - 1], m[p]
    if w[n - 1] < 0:
        m[n - 1] = [-a for a in m[n - 1]]
    return tuple(tuple(row) for row in m)


def _apply(m: Sequence[Sequence[int]], alpha: Sequence[int]) -> LatticeVector:
    return tuple(sum(a * x for a, x in zip(row, alpha)) for row in m)


def ray_minimal_polynomial(p: PolyOverSeries, gamma: Sequence[int], v: Sequence[int]) -> BivariatePoly:
    """
    Polynomial Q(T, Y) with Q(T, F(T)) = 0 for every root of P of the form x^gamma * F(x^v).

    The monomial change x^beta -> y^(M beta) with M v = e_n turns P(x^gamma * Y) into a Laurent polynomial in
    y_1, ..., y_n and Y. As F only depends on T = y_n, every coefficient of a monomial in y_1, ..., y_(n-1) is a
    polynomial equation for F, and Q is the primitive squarefree part of their gcd.

    Args:
        p (PolyOverSeries): polynomial with polynomial coefficients, in the scaled lattice of gamma
        gamma (Sequence): ray origin
        v (Sequence): primitive ray direction

    Returns:
        BivariatePoly: polynomial of positive degree in Y
    """
    gamma, v = as_lattice_vector(gamma), as_lattice_vector(v)
    check_vector_dimension(gamma, p.dim)
    check_vector_dimension(v, p.dim)
    if any(a.rays or not a.known.everywhere for a in p.coefficients):
        raise UsageError("Ray minimal polynomials need polynomial coefficients.")
    m = unimodular_completion(v)
    components = {}
    for i, a in enumerate(p.coefficients):
        for beta, c in a.terms:
            e = _apply(m, tuple(b + i * g for b, g in zip(beta, gamma)))
            components.setdefault(e[:-1], []).append((e[-1], i, c))
    equations = []
    for parts in components.values():
        low = min(t for t, _, _ in parts)
        expr = sum(
            (sympy.Rational(c.numerator, c.denominator) * SYMBOL_T ** (t - low) * SYMBOL_Y**i for t, i, c in parts),
            sympy.Integer(0),
        )
        if expr != 0:
            equations.append(sympy.Poly(expr, SYMBOL_T, SYMBOL_Y, domain=sympy.QQ))
    if not equations:
        raise UsageError("P vanishes identically on the ray.")
    g = reduce(sympy.gcd, equations)
    g = sympy.Poly(sympy.sqf_part(g.as_expr()), SYMBOL_T, SYMBOL_Y, domain=sympy.QQ)
    _, g_y = sympy.Poly(g.as_expr(), SYMBOL_Y, domain=sympy.QQ[SYMBOL_T]).primitive()
    g = sympy.Poly(g_y.as_expr(), SYMBOL_T, SYMBOL_Y, domain=sympy.QQ)
    if g.degree(SYMBOL_Y) < 1:
        raise ConeSeriesError("P has no root of the form x^gamma * F(x^v).")
    logger.debug("ray minimal polynomial %s", g.as_expr())
    return BivariatePoly.from_sympy(g)


def ray_structure(lift: LiftResult) -> Optional[Tuple[LatticeVector, LatticeVector, List[int]]]:
    """
    (gamma, v, labels) when every realized exponent of the lift is gamma + m * v, in the scaled lattice; None when
    the lift has a single term or its exponents leave every ray.
    """
    terms = lift.series.terms
    omega = lift.omega
    gamma = min((e for e, _ in terms), key=lambda e: dot(omega, e))
    differences = [sub(e, gamma) for e, _ in terms if e != gamma]
    if not differences:
        return None
    v = primitive(differences[0])
    labels = [0]
    j = next(i for i, x in enumerate(v) if x != 0)
    for d in differences:
        m, rest = divmod(d[j], v[j])
        if rest != 0 or m <= 0 or d != tuple(m * x for x in v):
            return None
        labels.append(m)
    return gamma, v, sorted(labels)


def certified_support(lift: LiftResult, p: PolyOverSeries) -> SupportSpec:
    """
    Support of the full root behind a lift.

    When the lift lives on a ray x^gamma * F(x^v), F is the branch of the ray minimal polynomial with the lift's
    leading coefficient. A polynomial F gives its exact finite support; otherwise every index beyond the lift's last
    known label is covered by a BoundedGapTail whose gap comes from the recurrence of F. Lifts off a single ray keep
    their realized points.

    Args:
        lift (LiftResult): result of hensel_lift
        p (PolyOverSeries): the lifted polynomial

    Returns:
        SupportSpec: support in the scaled lattice of the lift
    """
    structure = ray_structure(lift)
    if structure is None:
        return lift.support
    gamma, v, labels = structure
    series = lift.series
    k = series.ramification
    scaled = PolyOverSeries(tuple(a.rescaled(k // a.ramification) for a in p.coefficients))
    q = ray_minimal_polynomial(scaled, gamma, v)
    y0 = series.term_dict[gamma]
    step = Fraction(dot(lift.omega, v))
    known = retruncate(series, lift.omega)
    last = floor_div(known * k - dot(lift.omega, gamma), step)
    coefficients = taylor_of_algebraic(q, y0, last)
    prefix = {m: c for m, c in enumerate(coefficients) if c != 0}
    if prefix != {m: series.term_dict[tuple(g + m * x for g, x in zip(gamma, v))] for m in labels}:
        logger.warning("the lift does not match the branch of %s, keeping its realized points", q.to_json())
        return lift.support
    if q.degree_y == 1:
        quotient, rest = divmod(-q.coefficient(0), q.coefficient(1))
        if rest.is_zero():
            members = tuple(m for m, c in enumerate(quotient.coefficients) if c != 0)
            return SupportSpec(series.dim, (), (Ray(gamma, v, Explicit(members)),), (), k)
    bound = gap_constant(ode_to_recurrence(algebraic_to_ode(q, y0)), lift.omega, v)
    tail = BoundedGapTail(last + 1, bound.max_gap + max(0, bound.r - last))
    points = tuple(e for e, _ in series.terms)
    return SupportSpec(series.dim, points, (Ray(gamma, v, tail),), (), k)
