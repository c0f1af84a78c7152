"""
Continuous preorders on exponent space given by a sequence of rational vectors (u1, ..., us): alpha is compared
with beta by the lexicographic order of the dot product tuples (u1.alpha, ..., us.alpha).
"""

import itertools
import logging
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from typing import List, Sequence, Tuple

from coneseries.geometry.cone import Cone, interior_vector, orthogonalize, project_out
from coneseries.kernel.linalg import orthogonal_complement, rank
from coneseries.kernel.rational import (
    RationalVector,
    as_rational_vector,
    dot,
    format_rational,
    is_zero,
    parse_rational,
    primitive,
    unit_vector,
)
from coneseries.standalone.errors import BadBasis, ConeNotInHalfSpace, NotStronglyConvex, UsageError
from coneseries.standalone.inputcheck import check_vector_dimension

logger = logging.getLogger(__name__)


class Comparison(IntEnum):
    Less = -1
    Equal = 0
    Greater = 1


@dataclass(frozen=True)
class VectorOrder:
    """
    Preorder given by the vectors (u1, ..., us); it is a total order when the vectors span the ambient space.
    """

    vectors: Tuple[RationalVector, ...]

    def __post_init__(self):
        vectors = tuple(as_rational_vector(u) for u in self.vectors)
        if len(vectors) == 0:
            raise UsageError("An order needs at least one vector.")
        n = len(vectors[0])
        for u in vectors:
            check_vector_dimension(u, n)
            if is_zero(u):
                raise UsageError("Order vectors must be nonzero.")
        if len(vectors) > n:
            raise UsageError("An order in dimension " + str(n) + " has at most " + str(n) + " vectors.")
        object.__setattr__(self, "vectors", vectors)

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    @cached_property
    def total(self) -> bool:
        return rank(self.vectors) == self.dim

    def key(self, alpha: Sequence) -> Tuple[Fraction, ...]:
        check_vector_dimension(alpha, self.dim)
        return tuple(Fraction(dot(u, alpha)) for u in self.vectors)

    def to_json(self) -> dict:
        return {"vectors": [[format_rational(x) for x in u] for u in self.vectors]}

    @classmethod
    def from_json(cls, data: dict) -> "VectorOrder":
        if not isinstance(data, dict) or not isinstance(data.get("vectors"), list):
            raise UsageError('An order document has the key "vectors" with a list of rational vectors.')
        return cls(tuple(tuple(parse_rational(x) for x in u) for u in data["vectors"]))


def weight_order(omega: Sequence) -> VectorOrder:
    """The preorder of a single weight vector."""
    return VectorOrder((as_rational_vector(omega),))


def compare(o: VectorOrder, alpha: Sequence, beta: Sequence) -> Comparison:
    """
    Compare two exponents under the order.

    Args:
        o (VectorOrder): order
        alpha (Sequence): first exponent
        beta (Sequence): second exponent

    Returns:
        Comparison: Less, Equal or Greater
    """
    ka, kb = o.key(alpha), o.key(beta)
    if ka < kb:
        return Comparison.Less
    elif ka > kb:
        return Comparison.Greater
    return Comparison.Equal


def is_nonnegative(o: VectorOrder, alpha: Sequence) -> bool:
    return compare(o, alpha, tuple(0 for _ in alpha)) != Comparison.Less


def is_positive(o: VectorOrder) -> bool:
    """True iff every vector of the first orthant is non-negative for the order."""
    return all(is_nonnegative(o, unit_vector(o.dim, j)) for j in range(o.dim))


def cone_nonnegative(o: VectorOrder, c: Cone) -> bool:
    """True iff every generator of the cone compares >= 0, which makes the whole cone non-negative."""
    check_vector_dimension(unit_vector(c.dim, 0), o.dim)
    return all(is_nonnegative(o, g) for g in c.generators)


def _next_vector(chosen: List[RationalVector], face: List[Sequence[int]], n: int) -> RationalVector:
    """
    Vector in the orthogonal complement of the chosen vectors which pairs non-negatively with the face generators.
    """
    candidates = set()
    for b in orthogonal_complement(chosen, n):
        candidates.add(tuple(b))
        candidates.add(tuple(-x for x in b))
    for candidate in sorted(candidates):
        if all(dot(candidate, g) >= 0 for g in face):
            return as_rational_vector(candidate)
    inner = interior_vector(Cone.from_generators(face, n).dual)
    projected = primitive(project_out(inner, orthogonalize(chosen)))
    return as_rational_vector(projected)


def refine_over_cone(omega: Sequence, c: Cone) -> VectorOrder:
    """
    Total order refining the preorder of omega for which the cone is non-negative.

    The cone must lie in the half space omega >= 0. Its face on the hyperplane omega = 0 is again strongly convex,
    so the next vector is chosen in the orthogonal complement of the vectors chosen so far with that face on its
    non-negative side, and the construction repeats on the smaller face until the vectors span the space.

    Args:
        omega (Sequence): nonzero rational weight vector
        c (Cone): strongly convex cone with omega.g >= 0 for every generator g

    Returns:
        VectorOrder: total order whose first vector is omega
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, c.dim)
    if is_zero(omega):
        raise UsageError("The weight vector must be nonzero.")
    negative = [g for g in c.generators if dot(omega, g) < 0]
    if negative:
        raise ConeNotInHalfSpace(
            "The generators " + str(negative) + " pair negatively with " + str([str(w) for w in omega]) + "."
        )
    if not c.strongly_convex:
        raise NotStronglyConvex("The cone " + str(list(c.generators)) + " contains a line.")
    chosen: List[RationalVector] = [omega]
    face = [g for g in c.generators if dot(omega, g) == 0]
    while len(chosen) < c.dim:
        u = _next_vector(chosen, face, c.dim)
        chosen.append(u)
        face = [g for g in face if dot(u, g) == 0]
    logger.debug("refined order %s", chosen)
    return VectorOrder(tuple(chosen))


def signflip_relint_test(c: Cone, omega: Sequence, basis: Sequence[Sequence]) -> bool:
    """
    True iff the cone is non-negative for every order (omega, e2 * u2, ..., en * un) with signs ei = +1 or -1.

    For a strongly convex cone the result agrees with relint_dual_contains(c, omega).

    Args:
        c (Cone): cone
        omega (Sequence): weight vector
        basis (Sequence): n - 1 vectors orthogonal to omega, spanning its orthogonal complement

    Returns:
        bool: outcome over all 2**(n-1) sign flips
    """
    omega = as_rational_vector(omega)
    check_vector_dimension(omega, c.dim)
    basis = [as_rational_vector(u) for u in basis]
    if len(basis) != c.dim - 1 or any(len(u) != c.dim or dot(omega, u) != 0 for u in basis):
        raise BadBasis("The basis must consist of " + str(c.dim - 1) + " vectors orthogonal to omega.")
    if rank([omega] + basis) != c.dim:
        raise BadBasis("The basis vectors together with omega do not span the space.")
    for signs in itertools.product((1, -1), repeat=c.dim - 1):
        vectors = (omega,) + tuple(tuple(s * x for x in u) for s, u in zip(signs, basis))
        if not cone_nonnegative(VectorOrder(vectors), c):
            return False
    return True
