"""
Gap criterion: the omega-levels k(i) of a series algebraic over the power series ring which is not a localized power
series satisfy k(i+1) <= k(i) + C for a constant C. A support whose level sequence has unbounded gaps therefore
belongs to no such series.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from coneseries.kernel.rational import as_rational_vector, dot, format_rational
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import Inconclusive, PreconditionLocalized
from coneseries.standalone.inputcheck import check_positive_omega, check_vector_dimension
from coneseries.support.predicates import in_localized_ring, tau_classify
from coneseries.support.spec import Ray, SupportSpec
from coneseries.transcendence.certificate import (
    CONSISTENT_TO_HORIZON,
    NOT_ALGEBRAIC_GAP,
    Certificate,
    rational_list,
)

logger = logging.getLogger(__name__)


def _gap_witness(r: Ray, omega, ramification: int) -> dict:
    a, b = r.omega_values(omega)
    indices = r.indices
    first = max(indices.first_label, 1)
    rows = []
    for i in range(first, first + 3):
        k_i = (a + indices.value(i) * b) / ramification
        k_next = (a + indices.value(i + 1) * b) / ramification
        rows.append(
            {
                "i": i,
                "k_i": format_rational(k_i),
                "k_next": format_rational(k_next),
                "gap": format_rational(k_next - k_i),
            }
        )
    return {"gap_expression": "(" + indices.gap_expression() + ")*" + format_rational(b / ramification), "gaps": rows}


def _observed_levels(s: SupportSpec, omega, horizon: int) -> dict:
    """Levels of the support up to the first point where some infinite component has used up the horizon."""
    values = {Fraction(dot(omega, p)) for p in s.points}
    cutoffs: List[Fraction] = []
    declared: List[Fraction] = []
    for r in s.rays:
        a, b = r.omega_values(omega)
        if r.indices.is_finite:
            values.update(a + m * b for m in r.indices.values)
        elif not r.indices.is_exact:
            declared.append(r.indices.max_gap * b)
            cutoffs.append(a + r.indices.start * b)
        elif b == 0:
            values.add(a)
        else:
            members = [m for _, m in zip(range(horizon), r.indices.members())]
            values.update(a + m * b for m in members)
            cutoffs.append(a + members[-1] * b)
    for t in s.tails:
        step = min(dot(omega, g) for g in t.cone.generators) if t.cone.generators else 0
        origin = Fraction(dot(omega, t.origin))
        if step == 0:
            values.add(origin)
            continue
        declared.append(Fraction(step))
        values.update(origin + j * step for j in range(horizon))
        cutoffs.append(origin + (horizon - 1) * step)
    cutoff = min(cutoffs) if cutoffs else max(values, default=Fraction(0))
    levels = sorted(v for v in values if v <= cutoff)
    gaps = [y - x for x, y in zip(levels, levels[1:])]
    k = s.ramification
    return {
        "levels_checked": len(levels),
        "up_to_level": format_rational(cutoff / k),
        "max_gap_observed": format_rational(max(gaps, default=Fraction(0)) / k),
        "declared_gap_bounds": rational_list(sorted(d / k for d in declared)),
    }


def gap_certificate(s: SupportSpec, omega: Sequence, horizon: Optional[int] = None) -> Certificate:
    """
    Refute algebraicity over K[[x]] from unbounded gaps of the omega-level sequence.

    Unboundedness is decided symbolically: the support must consist of finitely many points and finite rays plus a
    single infinite ray whose index set has unbounded gaps and whose direction pairs positively with omega; beyond
    the finite part the levels are then those of the ray. Every other admissible support is checked on its first
    horizon levels and reported as consistent.

    Args:
        s (SupportSpec): support which is not bounded below coordinatewise
        omega (Sequence): strictly positive weight vector
        horizon (int, optional): levels per component for the consistency check, defaults to the gap_horizon setting

    Returns:
        Certificate: NotAlgebraicGap or ConsistentToHorizon
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, s.dim)
    check_positive_omega(omega)
    if horizon is None:
        horizon = get_settings()["gap_horizon"]
    if in_localized_ring(s):
        raise PreconditionLocalized("The support lies in a shifted first orthant, the gap criterion does not apply.")
    kind = tau_classify(s, omega).kind
    if kind in ("Unknown", "InTau1"):
        raise Inconclusive("The omega-levels of the support are not finite below every bound (" + kind + ").")
    inputs = {"support": s.to_json(), "omega": rational_list(omega), "horizon": horizon}
    infinite = list(s.infinite_rays())
    if len(infinite) == 1 and not s.tails:
        r = infinite[0]
        if r.indices.gaps_unbounded and dot(omega, r.direction) > 0:
            logger.debug("unbounded gaps along %s", r.direction)
            return Certificate(NOT_ALGEBRAIC_GAP, "gap", omega, _gap_witness(r, omega, s.ramification), inputs)
    return Certificate(CONSISTENT_TO_HORIZON, "gap", omega, _observed_levels(s, omega, horizon), inputs)
