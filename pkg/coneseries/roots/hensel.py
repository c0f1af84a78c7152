"""
Graded Hensel lifting of a simple monomial initial root.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Dict, Optional, Sequence, Tuple, Union

from coneseries.geometry.cone import Cone, zero_cone
from coneseries.kernel.rational import (
    LatticeVector,
    RationalVector,
    as_rational_vector,
    dot,
    format_rational,
    sub,
)
from coneseries.orders.order import VectorOrder, cone_nonnegative
from coneseries.roots.newton import InitialRoot, PolyOverSeries, monomial_initials
from coneseries.series.laurent import KnownRegion, LaurentSeriesValue, substitute
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import (
    ConeSeriesError,
    HorizonExceedsCoefficientKnowledge,
    HorizonExceedsKnowledge,
    NotARoot,
    NotSimpleRoot,
    NotWellOrdered,
)
from coneseries.standalone.inputcheck import check_vector_dimension
from coneseries.support.spec import SupportSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftResult:
    """Truncated root together with one shifted cone gamma + sigma holding every realized exponent."""

    series: LaurentSeriesValue
    gamma: RationalVector
    sigma: Cone
    support: SupportSpec
    omega: RationalVector
    horizon: Fraction

    def to_json(self) -> dict:
        return {
            "series": self.series.to_json(),
            "gamma": [format_rational(x) for x in self.gamma],
            "sigma": self.sigma.to_json(),
            "support": self.support.to_json(),
            "omega": [format_rational(w) for w in self.omega],
            "horizon": format_rational(self.horizon),
        }


def _as_initial(initial: Union[InitialRoot, Tuple[Sequence, Fraction]], omega: RationalVector) -> InitialRoot:
    if isinstance(initial, InitialRoot):
        return initial
    alpha, c = initial
    alpha = as_rational_vector(alpha)
    return InitialRoot(Fraction(dot(omega, alpha)), alpha, Fraction(c), 1, lcm(*(x.denominator for x in alpha)))


def _derivative_initial(
    p: PolyOverSeries, root: InitialRoot, omega: RationalVector
) -> Tuple[Fraction, RationalVector, Fraction]:
    """
    Check that c * x^alpha solves the initial equation simply and return In(P'(c * x^alpha)) = d * x^beta as
    (nu, beta, d).
    """
    initials = monomial_initials(p, omega)
    values = {i: Fraction(dot(omega, a)) + i * root.t for i, a, _ in initials}
    level = min(values.values())
    edge = [(i, a, c) for i, a, c in initials if values[i] == level]
    exponents = {tuple(x + i * y for x, y in zip(a, root.alpha)) for i, a, _ in edge}
    if len(edge) < 2 or len(exponents) != 1 or sum(c * root.c**i for i, _, c in edge) != 0:
        raise NotARoot("The monomial " + str(root.to_json()) + " does not solve the omega-initial equation.")
    d = sum(i * c * root.c ** (i - 1) for i, _, c in edge if i > 0)
    if d == 0:
        raise NotSimpleRoot("The omega-initial part of dP/dT vanishes at " + str(root.to_json()) + ".")
    i, a, _ = next(e for e in edge if e[0] > 0)
    beta = tuple(x + (i - 1) * y for x, y in zip(a, root.alpha))
    return level - root.t, beta, d


def _add_terms(terms: Dict[LatticeVector, Fraction], more: Dict[LatticeVector, Fraction]) -> None:
    for e, c in more.items():
        terms[e] = terms.get(e, Fraction(0)) + c
        if terms[e] == 0:
            del terms[e]


def hensel_lift(
    p: PolyOverSeries,
    initial: Union[InitialRoot, Tuple[Sequence, Fraction]],
    omega: Sequence,
    horizon,
    order: Optional[VectorOrder] = None,
) -> LiftResult:
    """
    Lift a simple initial root c * x^alpha of P to a root truncated in the omega-grading.

    Each step evaluates the residual R = P(xi) below the horizon and subtracts In_omega(R) / In_omega(P'(xi)) from xi;
    the initial of P'(xi) stays the monomial d * x^beta of the initial root, so the division is exact and each step
    removes the lowest level of R. The loop ends when R vanishes up to the horizon, and xi then agrees with the true
    root up to omega-degree horizon - nu_omega(P'(xi)).

    Args:
        p (PolyOverSeries): polynomial over series
        initial (InitialRoot or tuple): initial root, or a pair (alpha, c)
        omega (Sequence): rational weight vector
        horizon (Rational): residual degree D
        order (VectorOrder, optional): order refining omega under which the reported cone must be non-negative

    Returns:
        LiftResult: truncated root, shift and cone of its support, and its support
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, p.dim)
    horizon = Fraction(horizon)
    root = _as_initial(initial, omega)
    nu_derivative, beta, d = _derivative_initial(p, root, omega)
    k = lcm(root.ramification, *(a.ramification for a in p.coefficients))
    coefficients = tuple(a.rescaled(k // a.ramification) for a in p.coefficients)
    leading = tuple(int(x * k) for x in root.alpha)
    beta = tuple(int(x * k) for x in beta)
    terms: Dict[LatticeVector, Fraction] = {leading: root.c}
    max_steps = get_settings()["hensel_max_steps"]
    for step in range(max_steps):
        xi = LaurentSeriesValue(p.dim, tuple(terms.items()), k)
        try:
            residual = substitute(coefficients, xi, omega, horizon)
        except HorizonExceedsKnowledge as error:
            raise HorizonExceedsCoefficientKnowledge(
                "The coefficients of P are not known far enough for horizon " + format_rational(horizon) + ": " + str(error)
            )
        if residual.is_zero():
            logger.debug("lift converged after %d steps with %d terms", step, len(terms))
            break
        level = min(dot(omega, e) for e, _ in residual.terms)
        correction = {sub(e, beta): -c / d for e, c in residual.terms if dot(omega, e) == level}
        _add_terms(terms, correction)
    else:
        raise ConeSeriesError("The lift did not converge within " + str(max_steps) + " steps.")
    known = horizon - nu_derivative
    series = LaurentSeriesValue(p.dim, tuple(terms.items()), k, (), KnownRegion(omega, known))
    differences = [sub(e, leading) for e, _ in series.terms if e != leading]
    sigma = Cone.from_generators(differences, p.dim) if differences else zero_cone(p.dim)
    if order is not None and not cone_nonnegative(order, sigma):
        raise NotWellOrdered("The support cone of the lift is not non-negative for the order.")
    return LiftResult(
        series=series,
        gamma=tuple(Fraction(x, k) for x in leading),
        sigma=sigma,
        support=series.support,
        omega=omega,
        horizon=horizon,
    )
