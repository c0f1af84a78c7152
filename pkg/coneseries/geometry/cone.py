"""
Rational polyhedral cones.

A cone is stored through a canonical generator set: a primitive basis of its lineality space together with the
negated basis vectors, followed by the primitive extreme rays of its pointed part projected onto the orthogonal
complement of the lineality space. Generators and dual cones are computed exactly with the Parma Polyhedra Library.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

import ppl

from coneseries.kernel.linalg import rank, row_space_basis
from coneseries.kernel.rational import (
    LatticeVector,
    RationalVector,
    add,
    as_lattice_vector,
    ceil_div,
    dot,
    is_zero,
    primitive,
    scale,
    sub,
    unit_vector,
)
from coneseries.standalone.errors import (
    IntersectionNotFullDimensional,
    NoSeparator,
    NotAVertex,
    NotStronglyConvex,
    UsageError,
)
from coneseries.standalone.inputcheck import check_dimension_supported, check_vector_dimension

logger = logging.getLogger(__name__)


def orthogonalize(basis: Sequence[Sequence]) -> List[Tuple[Fraction, ...]]:
    result: List[Tuple[Fraction, ...]] = []
    for b in basis:
        w = tuple(Fraction(x) for x in b)
        for u in result:
            w = sub(w, scale(dot(w, u) / dot(u, u), u))
        if not is_zero(w):
            result.append(w)
    return result


def project_out(x: Sequence, orthogonal_basis: Sequence[Sequence]) -> tuple:
    w = tuple(Fraction(a) for a in x)
    for u in orthogonal_basis:
        w = sub(w, scale(dot(w, u) / dot(u, u), u))
    return w


def _canonical_rays(rays: Iterable[Sequence], lineality: Sequence[Sequence]) -> List[LatticeVector]:
    orthogonal = orthogonalize(lineality)
    result = set()
    for r in rays:
        p = primitive(project_out(r, orthogonal))
        if not is_zero(p):
            result.add(p)
    return sorted(result)


def _polyhedron_from_generators(generators: Iterable[Sequence[int]], n: int) -> ppl.C_Polyhedron:
    cone = ppl.C_Polyhedron(n, "empty")
    cone.add_generator(ppl.point())
    for g in generators:
        cone.add_generator(ppl.ray(ppl.Linear_Expression([int(x) for x in g], 0)))
    return cone


def _polyhedron_from_constraints(constraints: Iterable[Sequence[int]], n: int) -> ppl.C_Polyhedron:
    """The cone {y : a.y >= 0 for every constraint a}."""
    cone = ppl.C_Polyhedron(n)
    for a in constraints:
        if is_zero(a):
            continue
        ineq = ppl.Linear_Expression([int(x) for x in a], 0)
        cone.add_constraint(ppl.Constraint(ineq >= 0))
    return cone


def _minimized_generators(cone: ppl.C_Polyhedron, n: int) -> Tuple[List[LatticeVector], List[LatticeVector]]:
    """
    Canonical lineality basis and canonical extreme rays of a cone.

    Returns:
        Tuple[list, list]: primitive echelon basis of the lines and the primitive rays projected off the lines
    """
    lines, rays = [], []
    for gen in cone.minimized_generators():
        coefficients = [int(c) for c in gen.coefficients()]
        coefficients += [0] * (n - len(coefficients))
        if gen.is_line():
            lines.append(tuple(coefficients))
        elif gen.is_ray():
            rays.append(tuple(coefficients))
    return row_space_basis(lines), _canonical_rays(rays, lines)


def _generators_from(lineality: Sequence[LatticeVector], rays: Sequence[LatticeVector]) -> Tuple[LatticeVector, ...]:
    gens = set(rays)
    for b in lineality:
        gens.add(tuple(b))
        gens.add(tuple(-x for x in b))
    return tuple(sorted(gens))


@dataclass(frozen=True)
class Cone:
    """
    Finitely generated rational polyhedral cone in dimension ``dim``.

    Instances built through :meth:`from_generators` are canonical, so two cones are equal exactly when their
    generator tuples are equal.
    """

    dim: int
    generators: Tuple[LatticeVector, ...]

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence], dim: int) -> "Cone":
        """
        Build the canonical cone generated by rational vectors.

        Args:
            generators (Iterable): generating vectors, zero vectors are ignored
            dim (int): ambient dimension

        Returns:
            Cone: canonical cone
        """
        gens = []
        for g in generators:
            check_vector_dimension(g, dim)
            p = primitive(g)
            if not is_zero(p):
                gens.append(p)
        check_dimension_supported(dim)
        lineality, rays = _minimized_generators(_polyhedron_from_generators(sorted(set(gens)), dim), dim)
        return cls(dim=dim, generators=_generators_from(lineality, rays))

    @cached_property
    def _dual_parts(self) -> Tuple[List[LatticeVector], List[LatticeVector]]:
        check_dimension_supported(self.dim)
        return _minimized_generators(_polyhedron_from_constraints(self.generators, self.dim), self.dim)

    @cached_property
    def dual(self) -> "Cone":
        lineality, rays = self._dual_parts
        return Cone(dim=self.dim, generators=_generators_from(lineality, rays))

    @cached_property
    def lineality_basis(self) -> List[LatticeVector]:
        """Primitive basis of the largest linear subspace contained in the cone."""
        check_dimension_supported(self.dim)
        lineality, _ = _minimized_generators(_polyhedron_from_generators(self.generators, self.dim), self.dim)
        return lineality

    @cached_property
    def dimension(self) -> int:
        return rank(self.generators)

    @cached_property
    def strongly_convex(self) -> bool:
        return self.dual.dimension == self.dim

    def to_json(self) -> dict:
        return {"dim": self.dim, "generators": [list(g) for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict) -> "Cone":
        if not isinstance(data, dict) or "dim" not in data or "generators" not in data:
            raise UsageError('A cone document has the keys "dim" and "generators".')
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise UsageError("The cone dimension must be a positive integer.")
        return cls.from_generators([as_lattice_vector(g) for g in data["generators"]], dim)


def first_orthant(n: int) -> Cone:
    return Cone(dim=n, generators=tuple(sorted(unit_vector(n, i) for i in range(n))))


def zero_cone(n: int) -> Cone:
    return Cone(dim=n, generators=())


def dual_cone(c: Cone) -> Cone:
    """
    Dual cone {v : v.u >= 0 for all u in c}.

    Args:
        c (Cone): cone of ambient dimension at most 4

    Returns:
        Cone: canonical dual cone
    """
    return c.dual


def is_strongly_convex(c: Cone) -> bool:
    """True iff the cone contains no line, equivalently iff its dual is full dimensional."""
    return c.strongly_convex


def cone_contains(c: Cone, p: Sequence) -> bool:
    check_vector_dimension(p, c.dim)
    return all(dot(d, p) >= 0 for d in c.dual.generators)


def relint_dual_contains(c: Cone, omega: Sequence) -> bool:
    """
    True iff omega lies in the interior of the dual of a strongly convex cone, that is iff omega pairs strictly
    positively with every generator.
    """
    check_vector_dimension(omega, c.dim)
    if not c.strongly_convex:
        raise NotStronglyConvex("The cone " + str(list(c.generators)) + " contains a line.")
    return all(dot(omega, g) > 0 for g in c.generators)


def cone_join(c1: Cone, c2: Cone) -> Cone:
    check_vector_dimension(unit_vector(c1.dim, 0), c2.dim)
    return Cone.from_generators(c1.generators + c2.generators, c1.dim)


def cone_intersection(c1: Cone, c2: Cone) -> Cone:
    check_vector_dimension(unit_vector(c1.dim, 0), c2.dim)
    return Cone.from_generators(cone_join(c1.dual, c2.dual).dual.generators, c1.dim)


def interior_vector(c: Cone) -> LatticeVector:
    """Sum of the generators, a point in the relative interior of the cone."""
    result = tuple(0 for _ in range(c.dim))
    for g in c.generators:
        result = add(result, g)
    return result


def shift_containment(gamma1: Sequence[int], c1: Cone, gamma2: Sequence[int], c2: Cone) -> LatticeVector:
    """
    Lattice vector gamma with gamma1 - gamma and gamma2 - gamma in the intersection of the two cones, so that the
    intersection of the shifted cones lies in gamma plus the intersection cone.

    The result is gamma = -t * w for the interior vector w of the intersection and the least integer t >= 0 that
    works; it is one valid choice, not a canonical one.
    """
    check_vector_dimension(gamma1, c1.dim)
    check_vector_dimension(gamma2, c1.dim)
    intersection = cone_intersection(c1, c2)
    if intersection.dimension < c1.dim:
        raise IntersectionNotFullDimensional(
            "The intersection of the cones has dimension " + str(intersection.dimension) + " < " + str(c1.dim) + "."
        )
    w = interior_vector(intersection)
    return shift_into(intersection, [gamma1, gamma2], w)


def shift_into(c: Cone, points: Sequence[Sequence[int]], w: Sequence[int]) -> LatticeVector:
    """
    Lattice vector gamma = -t * w with p - gamma in c for every point p, for a vector w in the interior of c.
    """
    t = 0
    for d in c.dual.generators:
        dw = dot(d, w)
        for p in points:
            dp = dot(d, p)
            if dp < 0:
                if dw <= 0:
                    raise IntersectionNotFullDimensional("The shift direction is not interior to the cone.")
                t = max(t, ceil_div(-dp, dw))
    return tuple(-t * x for x in w)


def is_extreme_ray(c: Cone, v: Sequence[int]) -> bool:
    return c.strongly_convex and tuple(primitive(v)) in c.generators


def separating_omega(tau: Cone, v: Sequence[int]) -> RationalVector:
    """
    Weight vector omega in the dual of tau with 0 < omega.v < -omega_j * v_j for every j with v_j < 0.

    The strict system is relaxed to the cone K cut out by the generators of tau, by v and by the negated vectors
    v^(j) (v with its j-th coordinate doubled); the sum of the generators of K is an interior point and is checked
    against the strict inequalities.

    Args:
        tau (Cone): strongly convex cone containing the first orthant
        v (LatticeVector): extreme ray of tau with a negative and a positive coordinate

    Returns:
        tuple: rational weight vector
    """
    check_vector_dimension(v, tau.dim)
    v = tuple(int(x) for x in v)
    if not any(x < 0 for x in v) or not any(x > 0 for x in v):
        raise NotAVertex("The vector " + str(list(v)) + " needs a negative and a positive coordinate.")
    if not tau.strongly_convex:
        raise NotStronglyConvex("The cone " + str(list(tau.generators)) + " contains a line.")
    if not is_extreme_ray(tau, v):
        raise NotAVertex("The vector " + str(list(v)) + " is not an extreme ray of the cone.")
    negative = [j for j, x in enumerate(v) if x < 0]
    rows = list(tau.generators) + [v]
    for j in negative:
        doubled = tuple(2 * x if i == j else x for i, x in enumerate(v))
        rows.append(tuple(-x for x in doubled))
    k = Cone.from_generators(rows, tau.dim).dual
    omega = tuple(Fraction(x) for x in interior_vector(k))
    strict = dot(omega, v) > 0 and all(dot(omega, v) < -omega[j] * v[j] for j in negative)
    if not strict or not all(dot(omega, g) >= 0 for g in tau.generators):
        raise NoSeparator("No weight vector separates " + str(list(v)) + " from the cone " + str(list(tau.generators)) + ".")
    logger.debug("separating weight %s for vertex %s", omega, v)
    return omega
