"""
Predicates on symbolic supports. Every question is answered per component (points, rays, tails) with exact
index-threshold arithmetic; infinite components are never enumerated.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import List, Optional, Sequence, Set, Tuple

from coneseries.geometry.cone import (
    Cone,
    cone_contains,
    cone_join,
    first_orthant,
    interior_vector,
    relint_dual_contains,
    shift_into,
)
from coneseries.kernel.rational import (
    LatticeVector,
    RationalVector,
    as_rational_vector,
    dot,
    floor_div,
    format_rational,
    sub,
)
from coneseries.orders.order import VectorOrder, cone_nonnegative, is_positive
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import (
    EmptySupport,
    Inconclusive,
    NoMinimum,
    NotStronglyConvex,
    NotWellOrdered,
    UsageError,
)
from coneseries.standalone.inputcheck import check_point_count, check_positive_omega, check_vector_dimension
from coneseries.support.spec import Ray, SupportSpec, Tail

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SlabCount:
    """Outcome of a slab count: kind is Finite, Infinite or Unknown; bound and exact only apply to Finite."""

    kind: str
    bound: Optional[int] = None
    exact: bool = True

    def to_json(self) -> dict:
        if self.kind == "Finite":
            return {"kind": self.kind, "bound": self.bound, "exact": self.exact}
        return {"kind": self.kind}


@dataclass(frozen=True)
class TauClass:
    """Outcome of the tau classification: kind is InTau0, InTau1, Boundary or Unknown."""

    kind: str
    boundary: Optional[Fraction] = None

    def to_json(self) -> dict:
        if self.kind == "Boundary":
            return {"kind": self.kind, "lambda0": format_rational(self.boundary)}
        return {"kind": self.kind}


def _ray_slab(ray: Ray, omega: RationalVector, level: Fraction, max_points: int) -> Tuple[SlabCount, Optional[Set]]:
    """Slab count of one ray, with its exponents when they are exactly known and few enough to enumerate."""
    a, b = ray.omega_values(omega)
    indices = ray.indices
    if b > 0:
        bound = (level - a) / b
        count, exact = indices.count_upto(bound)
        if exact and count <= max_points:
            return SlabCount("Finite", count), {ray.point(m) for m in indices.members_upto(bound)}
        return SlabCount("Finite", count, exact), None
    if not indices.is_finite:
        if b < 0 or a <= level:
            return SlabCount("Infinite"), None
        return SlabCount("Finite", 0), set()
    points = {ray.point(m) for m in indices.values if a + m * b <= level}
    return SlabCount("Finite", len(points)), points


def _tail_box(tail: Tail, omega: RationalVector, budget: Fraction) -> Tuple[List[int], List[int]]:
    vertices: List[Sequence] = [tail.origin]
    for g in tail.cone.generators:
        t = budget / dot(omega, g)
        vertices.append(tuple(x + t * y for x, y in zip(tail.origin, g)))
    low = [floor_div(min(p[i] for p in vertices), 1) for i in range(tail.cone.dim)]
    high = [-floor_div(-max(p[i] for p in vertices), 1) for i in range(tail.cone.dim)]
    return low, high


def _tail_slab(tail: Tail, omega: RationalVector, level: Fraction, max_points: int) -> Tuple[SlabCount, Optional[Set]]:
    pairings = [dot(omega, g) for g in tail.cone.generators]
    if any(p < 0 for p in pairings):
        return SlabCount("Infinite"), None
    budget = level - dot(omega, tail.origin)
    if budget < 0:
        return SlabCount("Finite", 0), set()
    if not relint_dual_contains(tail.cone, omega):
        return SlabCount("Unknown"), None
    low, high = _tail_box(tail, omega, budget)
    size = prod(h - l + 1 for l, h in zip(low, high))
    if size > max_points:
        logger.debug("tail box of %d points is only bounded, not enumerated", size)
        return SlabCount("Finite", size, False), None
    points = {
        p
        for p in itertools.product(*(range(l, h + 1) for l, h in zip(low, high)))
        if dot(omega, p) - dot(omega, tail.origin) <= budget and cone_contains(tail.cone, sub(p, tail.origin))
    }
    return SlabCount("Finite", len(points), False), points


def slab_count(s: SupportSpec, omega: Sequence, k, max_points: Optional[int] = None) -> SlabCount:
    """
    Count the support elements alpha with alpha.omega <= k.

    Exponents shared by several components are counted once whenever the components are enumerated. Tails stand for
    every lattice point of their shifted cone, so their counts are upper bounds, as are the counts of components too
    large to enumerate next to another component. A tail whose cone meets the hyperplane omega = 0 in a nonzero face
    yields Unknown unless the slab stays below its origin.

    Args:
        s (SupportSpec): support
        omega (Sequence): rational weight vector
        k (Rational): slab level
        max_points (int): largest ray or tail box that is enumerated instead of bounded by its size

    Returns:
        SlabCount: Finite with an upper bound, Infinite or Unknown
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, s.dim)
    if max_points is None:
        max_points = get_settings()["max_points"]
    level = Fraction(k) * s.ramification
    parts = [(SlabCount("Finite", 0), {p for p in s.points if dot(omega, p) <= level})]
    parts += [_ray_slab(r, omega, level, max_points) for r in s.rays]
    parts += [_tail_slab(t, omega, level, max_points) for t in s.tails]
    if any(p.kind == "Infinite" for p, _ in parts):
        return SlabCount("Infinite")
    if any(p.kind == "Unknown" for p, _ in parts):
        return SlabCount("Unknown")
    enumerated: Set[LatticeVector] = set()
    loose: List[int] = []
    for part, points in parts:
        if points is None:
            loose.append(part.bound)
        else:
            enumerated |= points
    exact = all(p.exact for p, _ in parts)
    if loose and (enumerated or len(loose) > 1):
        exact = False
    return SlabCount("Finite", len(enumerated) + sum(loose), exact)


def tau_classify(s: SupportSpec, omega: Sequence) -> TauClass:
    """
    Decide whether every slab {u.omega <= k} meets the support finitely (InTau0), infinitely (InTau1), or
    finitely exactly below a boundary value lambda0 (Boundary).
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, s.dim)
    check_positive_omega(omega)
    in_tau1, unknown = False, False
    levels: List[Fraction] = []
    for r in s.infinite_rays():
        a, b = r.omega_values(omega)
        if b < 0:
            in_tau1 = True
        elif b == 0:
            levels.append(a / s.ramification)
    for t in s.tails:
        pairings = [dot(omega, g) for g in t.cone.generators]
        if any(p < 0 for p in pairings):
            in_tau1 = True
        elif any(p == 0 for p in pairings):
            unknown = True
    if in_tau1:
        return TauClass("InTau1")
    if unknown:
        return TauClass("Unknown")
    if levels:
        return TauClass("Boundary", min(levels))
    return TauClass("InTau0")


def _envelope_cone(s: SupportSpec) -> Cone:
    directions = [t for tail in s.tails for t in tail.cone.generators]
    directions += [r.direction for r in s.infinite_rays()]
    return cone_join(first_orthant(s.dim), Cone.from_generators(directions, s.dim))


def _anchors(s: SupportSpec) -> List[LatticeVector]:
    anchors = list(s.points) + [t.origin for t in s.tails]
    for r in s.rays:
        if r.indices.is_finite:
            anchors += [r.point(m) for m in r.indices.values]
        else:
            anchors.append(r.origin)
    return anchors


def lattice_envelope(s: SupportSpec) -> Tuple[LatticeVector, Cone]:
    """Envelope with the shift in the scaled lattice of the support."""
    sigma = _envelope_cone(s)
    if not sigma.strongly_convex:
        raise NotStronglyConvex("The support does not lie in a shifted strongly convex cone.")
    return shift_into(sigma, _anchors(s), interior_vector(sigma)), sigma


def envelope(s: SupportSpec) -> Tuple[RationalVector, Cone]:
    """
    One shifted cone gamma + sigma containing the whole support, sigma being the join of the first orthant, the
    tail cones and the directions of the infinite rays.

    Returns:
        Tuple[tuple, Cone]: rational shift gamma and cone sigma
    """
    gamma, sigma = lattice_envelope(s)
    return tuple(Fraction(x, s.ramification) for x in gamma), sigma


def support_contains(s: SupportSpec, alpha: Sequence[int]) -> bool:
    """True when the scaled lattice point alpha is a point of the support, or may be one for partially known rays."""
    check_vector_dimension(alpha, s.dim)
    alpha = tuple(alpha)
    if alpha in s.points:
        return True
    for r in s.rays:
        offset = sub(alpha, r.origin)
        j = next(i for i, x in enumerate(r.direction) if x != 0)
        m, rest = divmod(offset[j], r.direction[j])
        if rest == 0 and m >= 0 and offset == tuple(m * x for x in r.direction) and r.indices.contains(m):
            return True
    return any(cone_contains(t.cone, sub(alpha, t.origin)) for t in s.tails)


def _check_total_positive(o: VectorOrder) -> None:
    if not o.total or not is_positive(o):
        raise UsageError("Field family membership is defined for total positive orders.")


def in_field_family(s: SupportSpec, o: VectorOrder) -> bool:
    """True iff the support lies in one shifted rational cone which is non-negative for the order."""
    check_vector_dimension(o.vectors[0], s.dim)
    _check_total_positive(o)
    return cone_nonnegative(o, _envelope_cone(s))


def family_shift(s: SupportSpec, o: VectorOrder) -> Tuple[RationalVector, Cone]:
    """Witness (gamma, sigma) of field family membership."""
    if not in_field_family(s, o):
        raise NotWellOrdered("The support is not contained in a shifted cone that is non-negative for the order.")
    return envelope(s)


def min_support(s: SupportSpec, o: VectorOrder) -> RationalVector:
    """
    The o-minimal element of the support.

    Every direction of an infinite ray compares > 0 under a total order making the envelope non-negative, so each ray
    is minimized at its least index and each tail at its origin. A bounded gap tail only bounds its least member from
    below, which decides the minimum only when that bound lies strictly above another candidate.

    Args:
        s (SupportSpec): nonempty support in the field family of o
        o (VectorOrder): total positive order

    Returns:
        tuple: minimal exponent as rational coordinates
    """
    if not in_field_family(s, o):
        raise NotWellOrdered("The support is not well ordered for the order " + str(o.to_json()) + ".")
    if s.is_empty():
        raise EmptySupport("The support is empty.")
    candidates = list(s.points) + [t.origin for t in s.tails]
    lower_bounds = []
    for r in s.rays:
        if not r.indices.is_exact:
            lower_bounds.append(r.point(r.indices.start))
        elif r.indices.is_finite:
            candidates += [r.point(m) for m in r.indices.values]
        else:
            candidates.append(r.point(r.indices.value(r.indices.first_label)))
    if not candidates:
        raise Inconclusive("The least member of a bounded gap tail is not determined.")
    best = min(candidates, key=o.key)
    if any(o.key(p) <= o.key(best) for p in lower_bounds):
        raise Inconclusive("The least member of a bounded gap tail may undercut the other support elements.")
    return tuple(Fraction(x, s.ramification) for x in best)


def nu_order(s: SupportSpec, o: VectorOrder) -> Tuple[Fraction, ...]:
    """Lexicographic valuation: the o-minimal support element paired with every vector of the order."""
    return o.key(min_support(s, o))


def nu_omega_spec(s: SupportSpec, omega: Sequence) -> Fraction:
    """
    Minimal omega-value over the support.

    Args:
        s (SupportSpec): support
        omega (Sequence): rational weight vector

    Returns:
        Fraction: exact minimum
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, s.dim)
    values = [Fraction(dot(omega, p)) for p in s.points]
    lower_bounds = []
    for r in s.rays:
        a, b = r.omega_values(omega)
        if not r.indices.is_finite and b < 0:
            raise NoMinimum("The ray " + str(r.to_json()) + " decreases without bound under omega.")
        if not r.indices.is_exact:
            lower_bounds.append(a + r.indices.start * b)
        elif r.indices.is_finite:
            values += [a + m * b for m in r.indices.values]
        else:
            values.append(a + r.indices.value(r.indices.first_label) * b)
    for t in s.tails:
        if any(dot(omega, g) < 0 for g in t.cone.generators):
            raise NoMinimum("A tail cone is not bounded below under omega.")
        values.append(Fraction(dot(omega, t.origin)))
    if not values:
        raise NoMinimum("The support has no determined element.")
    best = min(values)
    if any(bound < best for bound in lower_bounds):
        raise NoMinimum("A bounded gap tail may undercut the determined support elements.")
    return best / s.ramification


def in_localized_ring(s: SupportSpec) -> bool:
    """True iff the support is bounded below coordinatewise, i.e. lies in gamma + first orthant for some gamma."""
    for t in s.tails:
        if any(x < 0 for g in t.cone.generators for x in g):
            return False
    return all(x >= 0 for r in s.infinite_rays() for x in r.direction)


def _ray_points_in_box(r: Ray, window: int) -> List[LatticeVector]:
    if not r.indices.is_exact:
        logger.warning("skipping the bounded gap ray from %s, its members are not known", r.origin)
        return []
    if r.indices.is_finite:
        members = list(r.indices.values)
    else:
        m_max = min(floor_div(window + abs(g), abs(x)) for g, x in zip(r.origin, r.direction) if x != 0)
        members = r.indices.members_upto(m_max)
    return [p for p in (r.point(m) for m in members) if all(abs(x) <= window for x in p)]


def materialize(s: SupportSpec, window: int, max_points: Optional[int] = None) -> List[RationalVector]:
    """
    Points of the support inside the box [-window, window]^n, as sorted rational exponents.

    Args:
        s (SupportSpec): support
        window (int): half width of the box in exponent units
        max_points (int): cap on the number of points, defaults to the max_points setting

    Returns:
        list: sorted exponents
    """
    if window < 0:
        raise UsageError("The window must be non-negative.")
    if max_points is None:
        max_points = get_settings()["max_points"]
    scaled_window = window * s.ramification
    if s.tails:
        check_point_count((2 * scaled_window + 1) ** s.dim, max_points=max_points)
    points = {p for p in s.points if all(abs(x) <= scaled_window for x in p)}
    for r in s.rays:
        points.update(_ray_points_in_box(r, scaled_window))
        check_point_count(len(points), max_points=max_points)
    if s.tails:
        box = range(-scaled_window, scaled_window + 1)
        for p in itertools.product(box, repeat=s.dim):
            if any(cone_contains(t.cone, sub(p, t.origin)) for t in s.tails):
                points.add(p)
    check_point_count(len(points), max_points=max_points)
    return sorted(tuple(Fraction(x, s.ramification) for x in p) for p in points)
