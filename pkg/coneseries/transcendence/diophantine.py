"""
Diophantine bound with exponent a = 1 for a ray series xi = x^gamma * F(x^v): the best approximation of xi by g / x^beta
with a power series g has omega-value nu_omega(a_m0 x^(gamma + m0 v)), where m0 is the first index whose term does not
become a power series after multiplying by x^beta. The bound nu <= omega.beta + b holds uniformly in beta exactly when
the blocked index grows no faster than omega.beta.
"""

import logging
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence

from coneseries.base.executor import BatchExecutor
from coneseries.dfinite.ode import algebraic_to_ode
from coneseries.dfinite.recurrence import gap_constant, ode_to_recurrence
from coneseries.geometry.cone import Cone, cone_join, first_orthant, separating_omega
from coneseries.kernel.rational import (
    RationalVector,
    as_lattice_vector,
    as_rational_vector,
    dot,
    format_rational,
    parse_rational,
)
from coneseries.series.laurent import ConstantRule, RaySeries, RecurrenceRule, TaylorRule
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import Inconclusive, NoBlockedIndex, NonpositiveStep, UsageError
from coneseries.standalone.inputcheck import check_positive_omega, check_vector_dimension
from coneseries.support.indexset import AllIndices
from coneseries.transcendence.certificate import (
    DIOPHANTINE_A1_FAILS,
    DIOPHANTINE_A1_HOLDS,
    Certificate,
    rational_list,
)

logger = logging.getLogger(__name__)


def _blocked(point: Sequence[int]) -> bool:
    return any(x < 0 for x in point)


def blocked_index(ray: RaySeries, beta: Sequence[int], limit: Optional[int] = None) -> int:
    """
    First member m with a nonzero coefficient and gamma + beta + m * v outside the first orthant.

    Args:
        ray (RaySeries): series x^gamma * F(x^v)
        beta (Sequence): non-negative shift
        limit (int, optional): members inspected before giving up, defaults to the dioph_search_limit setting

    Returns:
        int: the blocked member m0
    """
    beta = as_lattice_vector(beta)
    check_vector_dimension(beta, len(ray.origin))
    if any(x < 0 for x in beta):
        raise UsageError("The shift beta has to be non-negative, got " + str(list(beta)) + ".")
    if limit is None:
        limit = get_settings()["dioph_search_limit"]
    shifted = tuple(g + b for g, b in zip(ray.origin, beta))
    v = ray.direction
    if all(x >= 0 for x in v) and not _blocked(shifted):
        raise NoBlockedIndex("Every term of x^beta * xi lies in the first orthant.")
    for count, m in enumerate(ray.indices.members()):
        if count >= limit:
            break
        if _blocked(tuple(s + m * x for s, x in zip(shifted, v))) and ray.coefficient(m) != 0:
            return m
    raise NoBlockedIndex("No blocked index among the first " + str(limit) + " members.")


def dioph_sup_nu(ray: RaySeries, beta: Sequence[int], omega: Sequence) -> Fraction:
    """
    Supremum over power series g of nu_omega(xi - g / x^beta), that is omega.(gamma + m0 * v).

    Args:
        ray (RaySeries): series x^gamma * F(x^v) in the unramified lattice
        beta (Sequence): non-negative shift
        omega (Sequence): strictly positive weight vector with omega.v > 0

    Returns:
        Fraction: the supremum
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, len(ray.origin))
    check_positive_omega(omega)
    step = Fraction(dot(omega, ray.direction))
    if step <= 0:
        raise NonpositiveStep("The ray direction pairs to " + format_rational(step) + " <= 0 with omega.")
    m0 = blocked_index(ray, beta)
    return Fraction(dot(omega, ray.origin)) + m0 * step


def choose_dioph_omega(v: Sequence[int]) -> RationalVector:
    """Weight vector with 0 < omega.v < -omega_j * v_j for every negative coordinate v_j."""
    v = as_lattice_vector(v)
    n = len(v)
    tau = cone_join(first_orthant(n), Cone.from_generators([v], n))
    return separating_omega(tau, v)


def _scan_row(task: dict) -> List[list]:
    """[beta, sup - omega.beta] for every beta of one row of the box, with None where nothing is blocked."""
    ray, omega, head, box = task["ray"], task["omega"], task["head"], task["box"]
    rows = []
    for rest in product(range(box + 1), repeat=len(ray.origin) - 1):
        beta = (head,) + rest
        try:
            value = dioph_sup_nu(ray, beta, omega) - dot(omega, beta)
        except NoBlockedIndex:
            value = None
        rows.append([beta, value])
    return rows


def _gap_data(ray: RaySeries, omega: RationalVector):
    """(C, M): beyond index M at most C consecutive coefficients vanish, None when no such bound is known."""
    indices, rule = ray.indices, ray.rule
    if isinstance(rule, ConstantRule) and rule.value != 0 and indices.max_gap is not None:
        return indices.max_gap - 1, next(iter(indices.members()))
    if isinstance(indices, AllIndices) and isinstance(rule, (TaylorRule, RecurrenceRule)):
        if isinstance(rule, TaylorRule):
            rec = ode_to_recurrence(algebraic_to_ode(rule.q, rule.y0))
        else:
            rec = rule.recurrence
        bound = gap_constant(rec, omega, ray.direction)
        return bound.max_gap, bound.r
    return None


def closed_form_bound(ray: RaySeries, omega: RationalVector) -> dict:
    """
    Bound on b valid for every beta.

    The blocked index satisfies m0 <= M1 + M2 + M3 with M1 the index from which every coordinate with v_i > 0 has
    become non-negative, M2 the first nonzero member and M3 = 1 + 2C + M the distance after which a nonzero
    coefficient is met again.
    """
    gamma, v = ray.origin, ray.direction
    if ray.indices.is_finite:
        values = [dot(omega, gamma) + m * dot(omega, v) for m in ray.indices.values if ray.coefficient(m) != 0]
        return {"b_closed_form": format_rational(max(values, default=Fraction(0)))}
    gap = _gap_data(ray, omega)
    if gap is None:
        raise Inconclusive("No gap bound is known for the coefficients of this ray.")
    c, m = gap
    m1 = max([Fraction(-g, x) for g, x in zip(gamma, v) if x > 0 and g < 0], default=Fraction(0))
    m2 = ray.first_nonzero(get_settings()["dioph_search_limit"])
    if m2 is None:
        raise Inconclusive("The ray has no nonzero coefficient within the search limit.")
    m3 = 1 + 2 * c + m
    b = (m1 + m2 + m3) * dot(omega, v) + dot(omega, gamma)
    b += sum(w * max(g, 0) for w, g, x in zip(omega, gamma, v) if x < 0)
    return {
        "M1": format_rational(m1),
        "M2": m2,
        "M3": m3,
        "C": c,
        "M": m,
        "b_closed_form": format_rational(b),
    }


def dioph_a1_scan(
    ray: RaySeries,
    omega: Optional[Sequence] = None,
    beta_box: int = 20,
    b_guess=None,
    max_workers: Optional[int] = None,
    cache_directory: Optional[str] = None,
) -> Certificate:
    """
    Decide the Diophantine bound with a = 1 for a ray series and measure the least b on a box of shifts.

    Along beta = t * d, with d_i = -v_i on the negative coordinates of v, the excess sup - omega.beta grows with slope
    omega.v - sum(omega_i * (-v_i)) over v_i < 0. A positive slope disproves the bound; otherwise the closed form
    bounds the excess for every beta. The box [0, beta_box]^n is scanned row by row on a BatchExecutor.

    Args:
        ray (RaySeries): series x^gamma * F(x^v) in the unramified lattice
        omega (Sequence, optional): weight vector, defaults to choose_dioph_omega(v)
        beta_box (int): side of the scanned box
        b_guess (Rational, optional): advisory value compared with the scanned b
        max_workers (int, optional): worker threads of the scan
        cache_directory (str, optional): result cache of the scan

    Returns:
        Certificate: DiophantineA1Holds or DiophantineA1Fails
    """
    if omega is None:
        omega = choose_dioph_omega(ray.direction)
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, len(ray.origin))
    check_positive_omega(omega)
    if beta_box < 0:
        raise UsageError("The box side has to be non-negative.")
    step = Fraction(dot(omega, ray.direction))
    if step <= 0:
        raise NonpositiveStep("The ray direction pairs to " + format_rational(step) + " <= 0 with omega.")
    b_guess = None if b_guess is None else parse_rational(b_guess)
    tasks = [{"ray": ray, "omega": omega, "head": head, "box": beta_box} for head in range(beta_box + 1)]
    with BatchExecutor(max_workers=max_workers, cache_directory=cache_directory) as exe:
        scanned = [item for row in exe.map_ordered(_scan_row, tasks) for item in row]
    values = [(beta, value) for beta, value in scanned if value is not None]
    logger.debug("scanned %d shifts, %d blocked", len(scanned), len(values))
    box_witness = {
        "box": beta_box,
        "blocked": len(values),
        "unblocked": len(scanned) - len(values),
    }
    b_box = None
    if values:
        beta_max, b_box = max(values, key=lambda item: item[1])
        box_witness["argmax_beta"] = list(beta_max)
    box_witness["b"] = None if b_box is None else format_rational(b_box)
    inputs = {
        "ray": ray.to_json(),
        "omega": rational_list(omega),
        "beta_box": beta_box,
        "b_guess": None if b_guess is None else format_rational(b_guess),
    }
    negative = [(w, x) for w, x in zip(omega, ray.direction) if x < 0]
    slope = step - sum(w * -x for w, x in negative)
    box_witness["slope"] = format_rational(slope)
    if slope > 0 and not ray.indices.is_finite:
        d = tuple(-x if x < 0 else 0 for x in ray.direction)
        ray_values = []
        for t in (1, 2, 3):
            beta = tuple(t * x for x in d)
            excess = dioph_sup_nu(ray, beta, omega) - dot(omega, beta)
            ray_values.append({"t": t, "beta": list(beta), "b": format_rational(excess)})
        witness = dict(box_witness, direction=list(d), divergent=ray_values)
        return Certificate(DIOPHANTINE_A1_FAILS, "diophantine", omega, witness, inputs)
    witness = dict(box_witness, **closed_form_bound(ray, omega))
    witness["b_guess"] = inputs["b_guess"]
    witness["b_guess_ok"] = None if b_guess is None or b_box is None else b_box <= b_guess
    return Certificate(DIOPHANTINE_A1_HOLDS, "diophantine", omega, witness, inputs)
