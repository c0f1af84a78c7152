from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterator, Sequence, Tuple

from coneseries.geometry.cone import Cone
from coneseries.kernel.rational import LatticeVector, add, as_lattice_vector, dot, scale
from coneseries.standalone.errors import DimensionMismatch, NotStronglyConvex, UsageError
from coneseries.standalone.inputcheck import check_primitive, check_ramification, check_vector_dimension
from coneseries.support.indexset import IndexSet, index_set_from_json


@dataclass(frozen=True)
class Ray:
    """Lattice points origin + m * direction for the members m of an index set."""

    origin: LatticeVector
    direction: LatticeVector
    indices: IndexSet

    def __post_init__(self):
        object.__setattr__(self, "origin", as_lattice_vector(self.origin))
        object.__setattr__(self, "direction", as_lattice_vector(self.direction))
        check_vector_dimension(self.direction, len(self.origin))
        check_primitive(self.direction)

    def point(self, m: int) -> LatticeVector:
        return add(self.origin, scale(m, self.direction))

    def omega_values(self, omega: Sequence) -> Tuple[Fraction, Fraction]:
        """Lattice omega-value of the origin and of the direction."""
        return Fraction(dot(omega, self.origin)), Fraction(dot(omega, self.direction))

    def scaled(self, factor: int) -> "Ray":
        return Ray(scale(factor, self.origin), self.direction, self.indices.scaled(factor))

    def to_json(self) -> dict:
        return {
            "origin": list(self.origin),
            "direction": list(self.direction),
            "indices": self.indices.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Ray":
        try:
            return cls(
                as_lattice_vector(data["origin"]),
                as_lattice_vector(data["direction"]),
                index_set_from_json(data["indices"]),
            )
        except (KeyError, TypeError):
            raise UsageError('A ray document has the keys "origin", "direction" and "indices".')


@dataclass(frozen=True)
class Tail:
    """The lattice points of origin + cone, taken as potentially occupied."""

    origin: LatticeVector
    cone: Cone

    def __post_init__(self):
        object.__setattr__(self, "origin", as_lattice_vector(self.origin))
        check_vector_dimension(self.origin, self.cone.dim)
        if not self.cone.strongly_convex:
            raise NotStronglyConvex("Tail cones must be strongly convex.")

    def scaled(self, factor: int) -> "Tail":
        return Tail(scale(factor, self.origin), self.cone)

    def to_json(self) -> dict:
        return {"origin": list(self.origin), "cone": self.cone.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Tail":
        try:
            return cls(as_lattice_vector(data["origin"]), Cone.from_json(data["cone"]))
        except (KeyError, TypeError):
            raise UsageError('A tail document has the keys "origin" and "cone".')


@dataclass(frozen=True)
class SupportSpec:
    """
    Subset of the lattice (1/ramification) Z^dim given by finitely many points, lattice rays and cone tails. All
    coordinates are stored multiplied by the ramification index.
    """

    dim: int
    points: Tuple[LatticeVector, ...] = ()
    rays: Tuple[Ray, ...] = ()
    tails: Tuple[Tail, ...] = ()
    ramification: int = 1
    metadata: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        check_ramification(self.ramification)
        points = tuple(sorted({as_lattice_vector(p) for p in self.points}))
        for p in points:
            check_vector_dimension(p, self.dim)
        for r in self.rays:
            check_vector_dimension(r.origin, self.dim)
        for t in self.tails:
            check_vector_dimension(t.origin, self.dim)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "rays", tuple(self.rays))
        object.__setattr__(self, "tails", tuple(self.tails))

    def is_empty(self) -> bool:
        return (
            not self.points
            and not self.tails
            and all(r.indices.is_finite and len(r.indices.values) == 0 for r in self.rays)
        )

    def infinite_rays(self) -> Iterator[Ray]:
        return (r for r in self.rays if not r.indices.is_finite)

    def scaled(self, factor: int) -> "SupportSpec":
        if factor == 1:
            return self
        return SupportSpec(
            dim=self.dim,
            points=tuple(scale(factor, p) for p in self.points),
            rays=tuple(r.scaled(factor) for r in self.rays),
            tails=tuple(t.scaled(factor) for t in self.tails),
            ramification=self.ramification * factor,
        )

    def with_ramification(self, k: int) -> "SupportSpec":
        if k % self.ramification != 0:
            raise UsageError("Ramification " + str(k) + " is not a multiple of " + str(self.ramification) + ".")
        return self.scaled(k // self.ramification)

    def union(self, other: "SupportSpec") -> "SupportSpec":
        if self.dim != other.dim:
            raise DimensionMismatch("Support specs of different dimensions cannot be merged.")
        k = lcm(self.ramification, other.ramification)
        a, b = self.with_ramification(k), other.with_ramification(k)
        rays = tuple(dict.fromkeys(a.rays + b.rays))
        tails = tuple(dict.fromkeys(a.tails + b.tails))
        return SupportSpec(self.dim, a.points + b.points, rays, tails, k)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "ramification": self.ramification,
            "points": [list(p) for p in self.points],
            "rays": [r.to_json() for r in self.rays],
            "tails": [t.to_json() for t in self.tails],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SupportSpec":
        if not isinstance(data, dict) or "dim" not in data:
            raise UsageError('A support document has the key "dim".')
        return cls(
            dim=int(data["dim"]),
            points=tuple(as_lattice_vector(p) for p in data.get("points", [])),
            rays=tuple(Ray.from_json(r) for r in data.get("rays", [])),
            tails=tuple(Tail.from_json(t) for t in data.get("tails", [])),
            ramification=int(data.get("ramification", 1)),
        )
