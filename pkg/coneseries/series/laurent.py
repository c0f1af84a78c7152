"""
Exact Laurent series values.

A value holds finitely many explicit terms and optionally symbolic rays x^(origin + m * direction) whose coefficients
come from a rule. Exponents are stored in the lattice scaled by the ramification index, so a Puiseux series in
x^(1/k) is a Laurent series in scaled coordinates. A known region (omega, D) states that every coefficient of
omega-value <= D is stored; values built from closed forms are known everywhere.
"""

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import lcm
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from coneseries.dfinite.recurrence import PRecurrence, recurrence_terms
from coneseries.geometry.cone import cone_join
from coneseries.kernel.polynomial import BivariatePoly
from coneseries.kernel.rational import (
    LatticeVector,
    RationalVector,
    add,
    as_lattice_vector,
    as_rational_vector,
    common_denominator,
    dot,
    floor_div,
    format_rational,
    parse_rational,
    scale,
    sub,
)
from coneseries.kernel.taylor import taylor_of_algebraic
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import (
    DimensionMismatch,
    HorizonExceedsCoefficientKnowledge,
    HorizonExceedsKnowledge,
    LevelNotFullyKnown,
    NoMinimum,
    UsageError,
)
from coneseries.standalone.inputcheck import check_primitive, check_vector_dimension
from coneseries.support.indexset import IndexSet, index_set_from_json
from coneseries.support.predicates import lattice_envelope, nu_omega_spec, support_contains
from coneseries.support.spec import Ray, SupportSpec, Tail

logger = logging.getLogger(__name__)


@lru_cache(maxsize=128)
def _prefix_block(rule: "CoefficientRule", size: int) -> Tuple[Fraction, ...]:
    return tuple(rule.compute_prefix(size))


def _cached_prefix(rule: "CoefficientRule", count: int) -> List[Fraction]:
    """First count coefficients, computed in blocks of doubling size."""
    size = 16
    while size < count:
        size *= 2
    try:
        block = _prefix_block(rule, size)
    except HorizonExceedsCoefficientKnowledge:
        block = _prefix_block(rule, count)
    return list(block[:count])


class CoefficientRule:
    """Coefficient a_m of the m-th point of a ray."""

    def coefficients(self, count: int) -> List[Fraction]:
        raise NotImplementedError()

    def coefficient(self, m: int) -> Fraction:
        return self.coefficients(m + 1)[m]

    def to_json(self) -> dict:
        raise NotImplementedError()


@dataclass(frozen=True)
class ConstantRule(CoefficientRule):
    value: Fraction = Fraction(1)

    def coefficients(self, count: int) -> List[Fraction]:
        return [Fraction(self.value)] * count

    def coefficient(self, m: int) -> Fraction:
        return Fraction(self.value)

    def to_json(self) -> dict:
        return {"kind": "constant", "value": format_rational(self.value)}


@dataclass(frozen=True)
class ExplicitRule(CoefficientRule):
    values: Tuple[Fraction, ...]

    def coefficients(self, count: int) -> List[Fraction]:
        if count > len(self.values):
            raise HorizonExceedsCoefficientKnowledge(
                "Only " + str(len(self.values)) + " coefficients are given, " + str(count) + " are needed."
            )
        return [Fraction(v) for v in self.values[:count]]

    def to_json(self) -> dict:
        return {"kind": "explicit", "values": [format_rational(v) for v in self.values]}


@dataclass(frozen=True)
class TaylorRule(CoefficientRule):
    """Taylor coefficients of the branch of Q(T, Y) = 0 with Y(0) = y0."""

    q: BivariatePoly
    y0: Fraction

    def coefficients(self, count: int) -> List[Fraction]:
        if count == 0:
            return []
        return _cached_prefix(self, count)

    def compute_prefix(self, count: int) -> List[Fraction]:
        return taylor_of_algebraic(self.q, self.y0, count - 1)

    def to_json(self) -> dict:
        return {"kind": "taylor", "q": self.q.to_json(), "y0": format_rational(self.y0)}


@dataclass(frozen=True)
class RecurrenceRule(CoefficientRule):
    recurrence: PRecurrence
    initial: Tuple[Fraction, ...]

    def coefficients(self, count: int) -> List[Fraction]:
        return _cached_prefix(self, count)

    def compute_prefix(self, count: int) -> List[Fraction]:
        return recurrence_terms(self.recurrence, self.initial, count)

    def to_json(self) -> dict:
        return {
            "kind": "recurrence",
            "recurrence": self.recurrence.to_json(),
            "initial": [format_rational(v) for v in self.initial],
        }


def rule_from_json(data: dict) -> CoefficientRule:
    if not isinstance(data, dict) or "kind" not in data:
        raise UsageError('A coefficient rule document has the key "kind".')
    kind = data["kind"]
    try:
        if kind == "constant":
            return ConstantRule(parse_rational(data.get("value", "1")))
        elif kind == "explicit":
            return ExplicitRule(tuple(parse_rational(v) for v in data["values"]))
        elif kind == "taylor":
            return TaylorRule(BivariatePoly.from_json(data["q"]), parse_rational(data["y0"]))
        elif kind == "recurrence":
            return RecurrenceRule(
                PRecurrence.from_json(data["recurrence"]),
                tuple(parse_rational(v) for v in data["initial"]),
            )
    except KeyError as key:
        raise UsageError("The coefficient rule " + str(kind) + " is missing the field " + str(key) + ".")
    raise UsageError("Unknown coefficient rule " + repr(kind) + ".")


def _ray_index(offset: Sequence[int], direction: Sequence[int]) -> Optional[int]:
    """The m >= 0 with offset = m * direction, None when there is none."""
    j = next(i for i, x in enumerate(direction) if x != 0)
    m, rest = divmod(offset[j], direction[j])
    if rest != 0 or m < 0 or tuple(offset) != tuple(m * x for x in direction):
        return None
    return m


@dataclass(frozen=True)
class RaySeries:
    """
    Terms rule(member // stride) * x^(origin + member * direction) for the members of an exactly known index set.
    """

    origin: LatticeVector
    direction: LatticeVector
    indices: IndexSet
    rule: CoefficientRule
    stride: int = 1

    def __post_init__(self):
        object.__setattr__(self, "origin", as_lattice_vector(self.origin))
        object.__setattr__(self, "direction", as_lattice_vector(self.direction))
        check_vector_dimension(self.direction, len(self.origin))
        check_primitive(self.direction)
        if not self.indices.is_exact:
            raise UsageError("Series rays need an exactly known index set.")

    def as_ray(self) -> Ray:
        return Ray(self.origin, self.direction, self.indices)

    def coefficient(self, member: int) -> Fraction:
        return self.rule.coefficient(member // self.stride)

    def member_at(self, alpha: Sequence[int]) -> Optional[int]:
        m = _ray_index(sub(alpha, self.origin), self.direction)
        if m is None or not self.indices.contains(m):
            return None
        return m

    def scaled(self, factor: int) -> "RaySeries":
        return RaySeries(
            scale(factor, self.origin), self.direction, self.indices.scaled(factor), self.rule, self.stride * factor
        )

    def terms_upto(self, omega: RationalVector, level: Fraction) -> Dict[LatticeVector, Fraction]:
        """Nonzero terms of scaled omega-value <= level."""
        a, b = Fraction(dot(omega, self.origin)), Fraction(dot(omega, self.direction))
        if self.indices.is_finite:
            members = [m for m in self.indices.values if a + m * b <= level]
        elif b > 0:
            members = self.indices.members_upto((level - a) / b)
        elif b == 0 and a > level:
            members = []
        else:
            raise HorizonExceedsKnowledge("The ray from " + str(self.origin) + " has infinitely many terms below the horizon.")
        result = {}
        for m in members:
            c = self.coefficient(m)
            if c != 0:
                result[add(self.origin, scale(m, self.direction))] = c
        return result

    def first_nonzero(self, limit: int) -> Optional[int]:
        for count, m in enumerate(self.indices.members()):
            if count >= limit:
                break
            if self.coefficient(m) != 0:
                return m
        return None

    def to_json(self) -> dict:
        data = {
            "origin": list(self.origin),
            "direction": list(self.direction),
            "indices": self.indices.to_json(),
            "rule": self.rule.to_json(),
        }
        if self.stride != 1:
            data["stride"] = self.stride
        return data

    @classmethod
    def from_json(cls, data: dict) -> "RaySeries":
        try:
            return cls(
                as_lattice_vector(data["origin"]),
                as_lattice_vector(data["direction"]),
                index_set_from_json(data["indices"]),
                rule_from_json(data["rule"]),
                int(data.get("stride", 1)),
            )
        except (KeyError, TypeError):
            raise UsageError('A series ray has the keys "origin", "direction", "indices" and "rule".')


@dataclass(frozen=True)
class KnownRegion:
    """Every coefficient of omega-value <= degree is known; omega None means every coefficient is known."""

    omega: Optional[RationalVector] = None
    degree: Optional[Fraction] = None

    @property
    def everywhere(self) -> bool:
        return self.omega is None

    def to_json(self) -> Union[str, dict]:
        if self.everywhere:
            return "everywhere"
        return {"omega": [format_rational(w) for w in self.omega], "degree": format_rational(self.degree)}

    @classmethod
    def from_json(cls, data) -> "KnownRegion":
        if data == "everywhere" or data is None:
            return cls()
        try:
            return cls(tuple(parse_rational(w) for w in data["omega"]), parse_rational(data["degree"]))
        except (KeyError, TypeError):
            raise UsageError('A known region is "everywhere" or has the keys "omega" and "degree".')


def _normalize_terms(terms) -> Tuple[Tuple[LatticeVector, Fraction], ...]:
    items = terms.items() if isinstance(terms, dict) else terms
    collected: Dict[LatticeVector, Fraction] = {}
    for alpha, c in items:
        alpha = as_lattice_vector(alpha)
        collected[alpha] = collected.get(alpha, Fraction(0)) + Fraction(c)
    return tuple(sorted((a, c) for a, c in collected.items() if c != 0))


@dataclass(frozen=True)
class LaurentSeriesValue:
    dim: int
    terms: Tuple[Tuple[LatticeVector, Fraction], ...] = ()
    ramification: int = 1
    rays: Tuple[RaySeries, ...] = ()
    known: KnownRegion = field(default_factory=KnownRegion)
    support: Optional[SupportSpec] = None

    def __post_init__(self):
        terms = _normalize_terms(self.terms)
        for alpha, _ in terms:
            check_vector_dimension(alpha, self.dim)
        for r in self.rays:
            check_vector_dimension(r.origin, self.dim)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "rays", tuple(self.rays))
        if self.support is None:
            support = SupportSpec(
                self.dim, tuple(a for a, _ in terms), tuple(r.as_ray() for r in self.rays), (), self.ramification
            )
            object.__setattr__(self, "support", support)
        else:
            if self.support.ramification != self.ramification or self.support.dim != self.dim:
                raise UsageError("The declared support does not match the ramification and dimension of the series.")
            outside = [a for a, _ in terms if not support_contains(self.support, a)]
            if outside:
                raise UsageError("The exponents " + str(outside[:3]) + " are not in the declared support.")

    @classmethod
    def polynomial(cls, terms, dim: Optional[int] = None, ramification: int = 1) -> "LaurentSeriesValue":
        terms = _normalize_terms(terms)
        if dim is None:
            if not terms:
                raise UsageError("The dimension of the zero polynomial must be given.")
            dim = len(terms[0][0])
        return cls(dim, terms, ramification)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coefficient=1, ramification: int = 1) -> "LaurentSeriesValue":
        return cls.polynomial({tuple(exponent): coefficient}, len(exponent), ramification)

    @classmethod
    def zero(cls, dim: int, ramification: int = 1) -> "LaurentSeriesValue":
        return cls(dim, (), ramification)

    @classmethod
    def one(cls, dim: int, ramification: int = 1) -> "LaurentSeriesValue":
        return cls.monomial(tuple(0 for _ in range(dim)), 1, ramification)

    @cached_property
    def term_dict(self) -> Dict[LatticeVector, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms and not self.rays

    def rescaled(self, factor: int) -> "LaurentSeriesValue":
        if factor == 1:
            return self
        return LaurentSeriesValue(
            self.dim,
            tuple((scale(factor, a), c) for a, c in self.terms),
            self.ramification * factor,
            tuple(r.scaled(factor) for r in self.rays),
            self.known,
            self.support.scaled(factor),
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "ramification": self.ramification,
            "terms": [[list(a), format_rational(c)] for a, c in self.terms],
            "rays": [r.to_json() for r in self.rays],
            "known_region": self.known.to_json(),
            "support": self.support.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentSeriesValue":
        if not isinstance(data, dict) or "dim" not in data:
            raise UsageError('A series document has the key "dim".')
        try:
            terms = tuple((as_lattice_vector(a), parse_rational(c)) for a, c in data.get("terms", []))
        except (TypeError, ValueError):
            raise UsageError('Series terms are written as [[exponent...], "p/q"].')
        support = data.get("support")
        return cls(
            dim=int(data["dim"]),
            terms=terms,
            ramification=int(data.get("ramification", 1)),
            rays=tuple(RaySeries.from_json(r) for r in data.get("rays", [])),
            known=KnownRegion.from_json(data.get("known_region")),
            support=SupportSpec.from_json(support) if support is not None else None,
        )


def _proportionality(omega: RationalVector, reference: RationalVector) -> Optional[Fraction]:
    """The c > 0 with omega = c * reference, None when there is none."""
    j = next((i for i, x in enumerate(reference) if x != 0), None)
    if j is None:
        return None
    c = omega[j] / reference[j]
    if c <= 0 or any(w != c * x for w, x in zip(omega, reference)):
        return None
    return c


def _lattice_step(omega: RationalVector) -> Fraction:
    return Fraction(1, common_denominator(omega))


def retruncate(f: LaurentSeriesValue, omega: Sequence) -> Optional[Fraction]:
    """
    Largest omega-degree D such that every coefficient of f of omega-value <= D is known, None when every coefficient
    is known.

    The known region of f is stated for its own weight; for another weight the bound is read off the support: every
    potential exponent of omega-value <= D must lie in the known region. Strict bounds are lowered to the next
    attainable omega-value of the scaled lattice.

    Args:
        f (LaurentSeriesValue): series
        omega (Sequence): rational weight vector

    Returns:
        Fraction: coarsest valid degree, or None
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, f.dim)
    if f.known.everywhere:
        return None
    c = _proportionality(omega, f.known.omega)
    if c is not None:
        return c * f.known.degree
    reference, ram = f.known.omega, f.ramification
    limit = f.known.degree * ram
    strict: List[Fraction] = []
    inclusive: List[Fraction] = []
    s = f.support
    points = list(s.points)
    for r in s.rays:
        if r.indices.is_finite:
            points += [r.point(m) for m in r.indices.values]
            continue
        a, b = Fraction(dot(omega, r.origin)), Fraction(dot(omega, r.direction))
        ak, bk = Fraction(dot(reference, r.origin)), Fraction(dot(reference, r.direction))
        if b < 0:
            raise HorizonExceedsKnowledge("A ray of the support decreases without bound under omega.")
        if bk <= 0:
            first = r.indices.start if not r.indices.is_exact else r.indices.value(r.indices.first_label)
            if ak + first * bk > limit:
                strict.append(a + first * b)
        else:
            threshold = floor_div(limit - ak, bk) + 1
            if r.indices.is_exact:
                m = r.indices.first_member_at_least(threshold)
            else:
                m = max(threshold, r.indices.start)
            if m is not None:
                strict.append(a + m * b)
    strict += [Fraction(dot(omega, p)) for p in points if dot(reference, p) > limit]
    for t in s.tails:
        a, ak = Fraction(dot(omega, t.origin)), Fraction(dot(reference, t.origin))
        pairs = [(Fraction(dot(omega, g)), Fraction(dot(reference, g))) for g in t.cone.generators]
        if any(w < 0 for w, _ in pairs):
            raise HorizonExceedsKnowledge("A tail of the support is not bounded below under omega.")
        if ak > limit or any(w == 0 and wk > 0 for w, wk in pairs):
            strict.append(a)
            continue
        ratios = [wk / w for w, wk in pairs if w > 0]
        rho = max(ratios, default=Fraction(0))
        if rho > 0:
            inclusive.append(a + (limit - ak) / rho)
    caps = inclusive + [x - _lattice_step(omega) for x in strict]
    if not caps:
        return None
    return min(caps) / ram


def _known_terms(f: LaurentSeriesValue, omega: RationalVector, degree: Fraction) -> Dict[LatticeVector, Fraction]:
    """All terms of f of omega-value <= degree, in the scaled lattice of f."""
    known = retruncate(f, omega)
    if known is not None and degree > known:
        raise HorizonExceedsKnowledge(
            "The series is known up to omega-degree " + format_rational(known) + ", not " + format_rational(degree) + "."
        )
    level = degree * f.ramification
    result = {a: c for a, c in f.terms if dot(omega, a) <= level}
    for r in f.rays:
        for a, c in r.terms_upto(omega, level).items():
            result[a] = result.get(a, Fraction(0)) + c
    return {a: c for a, c in result.items() if c != 0}


def _finite_terms(f: LaurentSeriesValue) -> Dict[LatticeVector, Fraction]:
    """Explicit terms plus the members of finite rays, summed per exponent."""
    result = dict(f.terms)
    for r in f.rays:
        if r.indices.is_finite:
            for m in r.indices.values:
                alpha = add(r.origin, scale(m, r.direction))
                result[alpha] = result.get(alpha, Fraction(0)) + r.coefficient(m)
    return result


def _coefficient_at(finite: Dict[LatticeVector, Fraction], infinite: Sequence[RaySeries], alpha: LatticeVector) -> Fraction:
    total = finite.get(alpha, Fraction(0))
    for r in infinite:
        member = r.member_at(alpha)
        if member is not None:
            total += r.coefficient(member)
    return total


def _next_ray_level(r: RaySeries, omega: RationalVector, lower: Optional[Fraction], limit: int) -> Optional[Fraction]:
    """Least omega-value above lower of a nonzero term among the next limit members of an infinite ray."""
    a, b = Fraction(dot(omega, r.origin)), Fraction(dot(omega, r.direction))
    if b == 0:
        if lower is not None and a <= lower:
            return None
        return a if r.first_nonzero(limit) is not None else None
    inspected = 0
    for m in r.indices.members():
        value = a + m * b
        if lower is not None and value <= lower:
            continue
        if inspected >= limit:
            return None
        inspected += 1
        if r.coefficient(m) != 0:
            return value
    return None


def _level_exponents(
    finite: Dict[LatticeVector, Fraction], infinite: Sequence[RaySeries], omega: RationalVector, level: Fraction, limit: int
) -> Iterator[LatticeVector]:
    """Exponents on the omega-level, lazily, the members of rays parallel to the level last."""
    yield from (a for a in finite if dot(omega, a) == level)
    parallel = []
    for r in infinite:
        a, b = Fraction(dot(omega, r.origin)), Fraction(dot(omega, r.direction))
        if b == 0:
            if a == level:
                parallel.append(r)
            continue
        m = (level - a) / b
        if m.denominator == 1 and m >= 0 and r.indices.contains(int(m)):
            yield add(r.origin, scale(int(m), r.direction))
    for r in parallel:
        yield from (add(r.origin, scale(m, r.direction)) for m in itertools.islice(r.indices.members(), limit))


def nu_omega(f: Union[LaurentSeriesValue, SupportSpec], omega: Sequence) -> Fraction:
    """
    The omega-order min{alpha.omega} over the support.

    For a series the levels holding terms are scanned upwards and the first one with a nonzero coefficient, after
    summing every term and ray member at the same exponent, is returned when every coefficient up to that value is
    known, or when it meets the lower bound given by the declared support.

    Args:
        f (LaurentSeriesValue or SupportSpec): series or support
        omega (Sequence): rational weight vector

    Returns:
        Fraction: exact omega-order
    """
    if isinstance(f, SupportSpec):
        return nu_omega_spec(f, omega)
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, f.dim)
    limit = get_settings()["dioph_search_limit"]
    finite = _finite_terms(f)
    infinite = [r for r in f.rays if not r.indices.is_finite]
    for r in infinite:
        if dot(omega, r.direction) < 0:
            raise NoMinimum("The ray from " + str(r.origin) + " decreases without bound under omega.")
    lower: Optional[Fraction] = None
    for _ in range(limit):
        candidates = [Fraction(dot(omega, a)) for a, c in finite.items() if c != 0 and (lower is None or dot(omega, a) > lower)]
        candidates += [v for v in (_next_ray_level(r, omega, lower, limit) for r in infinite) if v is not None]
        if not candidates:
            raise NoMinimum("The zero series has no omega-order.")
        level = min(candidates)
        if any(_coefficient_at(finite, infinite, alpha) != 0 for alpha in _level_exponents(finite, infinite, omega, level, limit)):
            break
        lower = level
    else:
        raise NoMinimum("No nonzero omega-level was found among the first " + str(limit) + " levels.")
    best = level / f.ramification
    try:
        known = retruncate(f, omega)
    except HorizonExceedsKnowledge:
        known = best - 1
    if known is None or best <= known:
        return best
    try:
        bound = nu_omega_spec(f.support, omega)
    except NoMinimum:
        bound = None
    if bound != best:
        raise NoMinimum("The omega-order is not determined by the known terms.")
    return best


def initial_part(f: LaurentSeriesValue, omega: Sequence) -> LaurentSeriesValue:
    """
    The terms of f on the level alpha.omega = nu_omega(f). The result may keep a symbolic ray when the level holds
    infinitely many terms.
    """
    omega = as_rational_vector(omega)
    t = nu_omega(f, omega)
    try:
        known = retruncate(f, omega)
    except HorizonExceedsKnowledge:
        raise LevelNotFullyKnown("No omega-level of the series is fully known.")
    if known is not None and t > known:
        raise LevelNotFullyKnown(
            "The level " + format_rational(t) + " lies beyond the known degree " + format_rational(known) + "."
        )
    level = t * f.ramification
    terms = {a: c for a, c in f.terms if dot(omega, a) == level}
    rays = []
    for r in f.rays:
        a, b = Fraction(dot(omega, r.origin)), Fraction(dot(omega, r.direction))
        if b == 0 and a == level and not r.indices.is_finite:
            rays.append(r)
            continue
        for alpha, c in r.terms_upto(omega, level).items():
            if dot(omega, alpha) == level:
                terms[alpha] = terms.get(alpha, Fraction(0)) + c
    return LaurentSeriesValue(f.dim, tuple(terms.items()), f.ramification, tuple(rays))


@dataclass(frozen=True)
class RayPart:
    """Coefficients G(m) of x^(gamma + m * v) in a series, with a flag telling whether the series lives on the ray."""

    series: LaurentSeriesValue
    gamma: LatticeVector
    v: LatticeVector
    on_ray: bool

    def coefficient(self, m: int) -> Fraction:
        alpha = add(self.gamma, scale(m, self.v))
        result = self.series.term_dict.get(alpha, Fraction(0))
        for r in self.series.rays:
            member = r.member_at(alpha)
            if member is not None:
                result += r.coefficient(member)
        return result

    def prefix(self, count: int) -> List[Fraction]:
        return [self.coefficient(m) for m in range(count)]


def ray_part(f: LaurentSeriesValue, gamma: Sequence[int], v: Sequence[int]) -> RayPart:
    """
    Restrict a series to the lattice ray gamma + Z>=0 * v, given in the scaled lattice of the series.

    Args:
        f (LaurentSeriesValue): series
        gamma (Sequence): ray origin
        v (Sequence): primitive direction

    Returns:
        RayPart: lazily evaluated coefficient sequence
    """
    gamma, v = as_lattice_vector(gamma), as_lattice_vector(v)
    check_vector_dimension(gamma, f.dim)
    check_vector_dimension(v, f.dim)
    check_primitive(v)
    on_ray = all(_ray_index(sub(a, gamma), v) is not None for a, _ in f.terms)
    for r in f.rays:
        if r.indices.is_finite:
            on_ray = on_ray and all(
                _ray_index(sub(add(r.origin, scale(m, r.direction)), gamma), v) is not None for m in r.indices.values
            )
        else:
            on_ray = on_ray and r.direction == v and _ray_index(sub(r.origin, gamma), v) is not None
    return RayPart(f, gamma, v, on_ray)


def _product_support(s1: SupportSpec, s2: SupportSpec, realized: Iterable[LatticeVector]) -> SupportSpec:
    if not s1.rays and not s1.tails and not s2.rays and not s2.tails:
        points = {add(p, q) for p in s1.points for q in s2.points}
        return SupportSpec(s1.dim, tuple(points), (), (), s1.ramification)
    gamma1, sigma1 = lattice_envelope(s1)
    gamma2, sigma2 = lattice_envelope(s2)
    tail = Tail(add(gamma1, gamma2), cone_join(sigma1, sigma2))
    return SupportSpec(s1.dim, tuple(realized), (), (tail,), s1.ramification)


def combine(f: LaurentSeriesValue, g: LaurentSeriesValue, op: str, omega: Sequence, horizon) -> LaurentSeriesValue:
    """
    Sum or product of two series, exact up to omega-degree horizon.

    A product needs f up to horizon - nu_omega(g) and g up to horizon - nu_omega(f). Both operands are rescaled to the
    least common ramification first.

    Args:
        f (LaurentSeriesValue): first operand
        g (LaurentSeriesValue): second operand
        op (str): "add" or "multiply"
        omega (Sequence): rational weight vector
        horizon (Rational): degree D up to which the result is exact

    Returns:
        LaurentSeriesValue: result with known region (omega, D)
    """
    omega = as_rational_vector(omega)
    horizon = Fraction(horizon)
    if f.dim != g.dim:
        raise DimensionMismatch("Series of dimensions " + str(f.dim) + " and " + str(g.dim) + " cannot be combined.")
    check_vector_dimension(omega, f.dim)
    k = lcm(f.ramification, g.ramification)
    f, g = f.rescaled(k // f.ramification), g.rescaled(k // g.ramification)
    if op == "add":
        result = _known_terms(f, omega, horizon)
        for a, c in _known_terms(g, omega, horizon).items():
            result[a] = result.get(a, Fraction(0)) + c
        support = f.support.union(g.support)
    elif op == "multiply":
        if f.is_zero() or g.is_zero():
            return LaurentSeriesValue(f.dim, (), k, (), KnownRegion(omega, horizon))
        try:
            nu_f, nu_g = nu_omega(f, omega), nu_omega(g, omega)
        except NoMinimum as error:
            raise HorizonExceedsKnowledge("Products need operands with a known omega-order: " + str(error))
        terms_f = _known_terms(f, omega, horizon - nu_g)
        terms_g = _known_terms(g, omega, horizon - nu_f)
        level = horizon * k
        result = {}
        for a, c in terms_f.items():
            for b, d in terms_g.items():
                e = add(a, b)
                if dot(omega, e) <= level:
                    result[e] = result.get(e, Fraction(0)) + c * d
        support = _product_support(f.support, g.support, [e for e, c in result.items() if c != 0])
    else:
        raise UsageError("The operation must be add or multiply, got " + repr(op) + ".")
    logger.debug("%s up to degree %s gave %d terms", op, horizon, len(result))
    return LaurentSeriesValue(f.dim, tuple(result.items()), k, (), KnownRegion(omega, horizon), support)


def _power(xi: LaurentSeriesValue, i: int, omega: RationalVector, horizon: Fraction, nu_xi: Fraction):
    if i == 0:
        return LaurentSeriesValue.one(xi.dim, xi.ramification)
    lower = _power(xi, i - 1, omega, horizon - nu_xi, nu_xi)
    return combine(lower, xi, "multiply", omega, horizon)


def substitute(p: Sequence[LaurentSeriesValue], xi: LaurentSeriesValue, omega: Sequence, horizon) -> LaurentSeriesValue:
    """
    Evaluate sum_i p[i] * xi^i exactly up to omega-degree horizon.
    """
    omega = as_rational_vector(omega)
    horizon = Fraction(horizon)
    nu_xi = nu_omega(xi, omega)
    result = LaurentSeriesValue.zero(xi.dim, xi.ramification)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        power = _power(xi, i, omega, horizon - nu_omega(a, omega), nu_xi)
        result = combine(result, combine(a, power, "multiply", omega, horizon), "add", omega, horizon)
    return result
