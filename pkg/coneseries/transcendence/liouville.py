"""
Liouville criterion: an element algebraic over K((x)) satisfies nu_omega(xi - f/g) <= a * nu_omega(g) + b for fixed
constants. Truncations f_N / g_N of a ray series whose ratio nu_omega(xi - f_N/g_N) / nu_omega(g_N) grows without
bound refute algebraicity.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from coneseries.kernel.rational import as_rational_vector, dot, format_rational, parse_rational
from coneseries.series.laurent import ConstantRule, RaySeries
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import Inconclusive, UsageError
from coneseries.standalone.inputcheck import check_positive_omega, check_ramification, check_vector_dimension
from coneseries.transcendence.certificate import (
    CONSISTENT_TO_HORIZON,
    NOT_ALGEBRAIC_LIOUVILLE,
    Certificate,
    rational_list,
)

logger = logging.getLogger(__name__)


def _next_nonzero(ray: RaySeries, labels, limit: int) -> Optional[int]:
    for count, i in enumerate(labels):
        if count >= limit:
            return None
        m = ray.indices.value(i)
        if ray.coefficient(m) != 0:
            return m
    return None


def truncation_rows(ray: RaySeries, omega: Sequence, n_max: int, ramification: int = 1) -> List[dict]:
    """
    Ratio table of the truncations f_N / g_N, where f_N / g_N is the sum of the ray terms with label <= N and g_N is
    the least monomial x^d clearing the negative exponents of that prefix.

    Rows with nu_omega(g_N) <= 0 carry no information and are left out.

    Args:
        ray (RaySeries): ray series with an infinite index set
        omega (Sequence): strictly positive weight vector
        n_max (int): number of labels to truncate at
        ramification (int): lattice scaling of the ray coordinates

    Returns:
        list: rows {"N", "nu_residual", "nu_g", "ratio"}
    """
    omega = as_rational_vector(omega)
    limit = get_settings()["dioph_search_limit"]
    origin, v = ray.origin, ray.direction
    a, b = Fraction(dot(omega, origin)), Fraction(dot(omega, v))
    d = [0] * len(origin)
    rows = []
    first = ray.indices.first_label
    for n in range(first, first + n_max):
        m = ray.indices.value(n)
        if ray.coefficient(m) != 0:
            d = [max(dj, -(g + m * x)) for dj, g, x in zip(d, origin, v)]
        nu_g = Fraction(dot(omega, d)) / ramification
        if nu_g <= 0:
            continue
        m_next = _next_nonzero(ray, ray.indices.labels_from(n + 1), limit)
        if m_next is None:
            raise Inconclusive("No nonzero coefficient beyond label " + str(n) + " within the search limit.")
        nu_residual = (a + m_next * b) / ramification
        rows.append(
            {
                "N": n,
                "nu_residual": format_rational(nu_residual),
                "nu_g": format_rational(nu_g),
                "ratio": format_rational(nu_residual / nu_g),
            }
        )
    return rows


def liouville_certificate(
    ray: RaySeries,
    omega: Sequence,
    a_max=10,
    n_max: int = 10,
    ramification: int = 1,
) -> Certificate:
    """
    Refute algebraicity over K((x)) of a ray series by its rational approximations.

    The ratio sequence is declared unbounded only in closed form: all coefficients equal a nonzero constant and the
    index set grows faster than any geometric sequence. Otherwise the table through n_max is compared against a_max.

    Args:
        ray (RaySeries): series sum a_m x^(origin + m * direction)
        omega (Sequence): strictly positive weight vector with omega.direction > 0
        a_max (Rational): largest exponent a accepted as consistent
        n_max (int): number of truncations
        ramification (int): lattice scaling of the ray coordinates

    Returns:
        Certificate: NotAlgebraicLiouville or ConsistentToHorizon
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, len(ray.origin))
    check_positive_omega(omega)
    check_ramification(ramification)
    a_max = parse_rational(a_max)
    if n_max < 1:
        raise UsageError("The number of truncations has to be positive.")
    if dot(omega, ray.direction) <= 0 or not any(x < 0 for x in ray.direction):
        raise Inconclusive("The truncation denominators of this ray have no positive omega-value.")
    inputs = {
        "ray": ray.to_json(),
        "omega": rational_list(omega),
        "a_max": format_rational(a_max),
        "n_max": n_max,
        "ramification": ramification,
    }
    if ray.indices.is_finite:
        return Certificate(CONSISTENT_TO_HORIZON, "liouville", omega, {"rows": [], "a_max": inputs["a_max"]}, inputs)
    rows = truncation_rows(ray, omega, n_max, ramification)
    if ray.indices.ratios_unbounded:
        if isinstance(ray.rule, ConstantRule) and ray.rule.value != 0:
            logger.debug("superexponential index set %s", ray.indices.to_json())
            witness = {"rows": rows[:3], "ratio_growth": "unbounded"}
            return Certificate(NOT_ALGEBRAIC_LIOUVILLE, "liouville", omega, witness, inputs)
        raise Inconclusive("The residual valuations are not available in closed form for this coefficient rule.")
    largest = max((parse_rational(row["ratio"]) for row in rows), default=Fraction(0))
    if largest > a_max:
        raise Inconclusive("The ratio " + format_rational(largest) + " exceeds a_max without a closed form.")
    witness = {"rows": rows, "a_max": inputs["a_max"], "max_ratio": format_rational(largest)}
    return Certificate(CONSISTENT_TO_HORIZON, "liouville", omega, witness, inputs)
