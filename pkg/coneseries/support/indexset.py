"""
Symbolic sets of non-negative integers used as the index sets of lattice rays.

Every variant enumerates its members by a label i starting at ``first_label``; members are strictly increasing in
the label. ``BoundedGapTail`` is only partially known: its members are >= start, the first one is at most
start + max_gap and consecutive members differ by at most max_gap.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, List, Optional, Tuple

from coneseries.kernel.polynomial import UniPoly, cauchy_root_bound
from coneseries.kernel.rational import floor_div
from coneseries.standalone.errors import UsageError
from coneseries.standalone.inputcheck import check_strictly_increasing


class IndexSet:
    first_label = 0
    is_finite = False
    is_exact = True
    gaps_unbounded = False
    ratios_unbounded = False

    def value(self, i: int) -> int:
        raise NotImplementedError()

    def labels(self) -> Iterator[int]:
        i = self.first_label
        while True:
            yield i
            i += 1

    def labels_from(self, start: int) -> Iterator[int]:
        i = max(start, self.first_label)
        while True:
            yield i
            i += 1

    def members(self) -> Iterator[int]:
        for i in self.labels():
            yield self.value(i)

    def members_upto(self, bound) -> List[int]:
        """Members m <= bound of an exactly known set."""
        result = []
        for m in self.members():
            if m > bound:
                break
            result.append(m)
        return result

    def count_upto(self, bound) -> Tuple[int, bool]:
        """Number of members <= bound, with a flag telling whether the count is exact or an upper bound."""
        return len(self.members_upto(bound)), True

    def first_member_at_least(self, threshold: int) -> Optional[int]:
        """Least member >= threshold, None when there is none or when it is not determined."""
        for m in self.members():
            if m >= threshold:
                return m
        return None

    def first_member_bound(self, threshold: int) -> Optional[int]:
        """Upper bound on the least member >= threshold."""
        return self.first_member_at_least(threshold)

    def contains(self, m: int) -> bool:
        return self.first_member_at_least(m) == m

    def gap(self, i: int) -> int:
        return self.value(i + 1) - self.value(i)

    @property
    def max_gap(self) -> Optional[int]:
        """Supremum of the gaps between consecutive members, None when unbounded."""
        raise NotImplementedError()

    def gap_expression(self) -> str:
        raise NotImplementedError()

    def scaled(self, factor: int) -> "IndexSet":
        raise NotImplementedError()

    def to_json(self) -> dict:
        raise NotImplementedError()


@dataclass(frozen=True)
class AllIndices(IndexSet):
    def value(self, i: int) -> int:
        return i

    def count_upto(self, bound) -> Tuple[int, bool]:
        return max(0, floor_div(bound, 1) + 1), True

    def first_member_at_least(self, threshold: int) -> Optional[int]:
        return max(threshold, 0)

    @property
    def max_gap(self) -> Optional[int]:
        return 1

    def gap_expression(self) -> str:
        return "1"

    def scaled(self, factor: int) -> IndexSet:
        return AllIndices() if factor == 1 else Arithmetic(0, factor)

    def to_json(self) -> dict:
        return {"kind": "All"}


@dataclass(frozen=True)
class Arithmetic(IndexSet):
    start: int
    step: int

    def __post_init__(self):
        if self.start < 0 or self.step < 1:
            raise UsageError("Arithmetic index sets need start >= 0 and step >= 1.")

    def value(self, i: int) -> int:
        return self.start + self.step * i

    def count_upto(self, bound) -> Tuple[int, bool]:
        if bound < self.start:
            return 0, True
        return floor_div(Fraction(bound) - self.start, self.step) + 1, True

    def first_member_at_least(self, threshold: int) -> Optional[int]:
        if threshold <= self.start:
            return self.start
        return self.start + self.step * (-((self.start - threshold) // self.step))

    @property
    def max_gap(self) -> Optional[int]:
        return self.step

    def gap_expression(self) -> str:
        return str(self.step)

    def scaled(self, factor: int) -> IndexSet:
        return Arithmetic(self.start * factor, self.step * factor)

    def to_json(self) -> dict:
        return {"kind": "Arithmetic", "start": self.start, "step": self.step}


@dataclass(frozen=True)
class PolynomialValues(IndexSet):
    p: UniPoly

    def __post_init__(self):
        p = self.p
        if p.degree < 1 or p.leading <= 0:
            raise UsageError("Polynomial index sets need a nonconstant polynomial with positive leading coefficient.")
        for i in range(p.degree + 1):
            if Fraction(p(i)).denominator != 1:
                raise UsageError("The polynomial " + str(p) + " is not integer valued.")
        if p(0) < 0:
            raise UsageError("Polynomial index sets take non-negative values.")
        difference = p.shift(1) - p
        prefix = [p(i) for i in range(cauchy_root_bound(difference) + 2)]
        check_strictly_increasing(prefix)

    def value(self, i: int) -> int:
        return int(self.p(i))

    def count_upto(self, bound) -> Tuple[int, bool]:
        if self.value(0) > bound:
            return 0, True
        high = 1
        while self.value(high) <= bound:
            high *= 2
        low = 0
        while high - low > 1:
            mid = (low + high) // 2
            if self.value(mid) <= bound:
                low = mid
            else:
                high = mid
        return low + 1, True

    @property
    def gaps_unbounded(self) -> bool:
        return self.p.degree >= 2

    @property
    def max_gap(self) -> Optional[int]:
        if self.p.degree >= 2:
            return None
        return int(self.p.leading)

    def gap_expression(self) -> str:
        return str(self.p.shift(1) - self.p)

    def scaled(self, factor: int) -> IndexSet:
        return PolynomialValues(self.p * factor)

    def to_json(self) -> dict:
        return {"kind": "PolynomialValues", "p": self.p.to_json()}


@dataclass(frozen=True)
class FactorialValues(IndexSet):
    scale: int = 1
    first_label = 1
    gaps_unbounded = True
    ratios_unbounded = True

    def value(self, i: int) -> int:
        return self.scale * factorial(i)

    @property
    def max_gap(self) -> Optional[int]:
        return None

    def gap_expression(self) -> str:
        prefix = "" if self.scale == 1 else str(self.scale) + "*"
        return prefix + "((i+1)! - i!)"

    def scaled(self, factor: int) -> IndexSet:
        return FactorialValues(self.scale * factor)

    def to_json(self) -> dict:
        data: dict = {"kind": "FactorialValues"}
        if self.scale != 1:
            data["scale"] = self.scale
        return data


@dataclass(frozen=True)
class Explicit(IndexSet):
    values: Tuple[int, ...]
    is_finite = True

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        check_strictly_increasing(values)
        if values and values[0] < 0:
            raise UsageError("Explicit index sets take non-negative values.")
        object.__setattr__(self, "values", values)

    def value(self, i: int) -> int:
        return self.values[i]

    def labels(self) -> Iterator[int]:
        return iter(range(len(self.values)))

    def labels_from(self, start: int) -> Iterator[int]:
        return iter(range(max(start, 0), len(self.values)))

    @property
    def max_gap(self) -> Optional[int]:
        return max((b - a for a, b in zip(self.values, self.values[1:])), default=0)

    def gap_expression(self) -> str:
        return "finite"

    def scaled(self, factor: int) -> IndexSet:
        return Explicit(tuple(v * factor for v in self.values))

    def to_json(self) -> dict:
        return {"kind": "Explicit", "values": list(self.values)}


@dataclass(frozen=True)
class BoundedGapTail(IndexSet):
    start: int
    max_gap_value: int
    is_exact = False

    def __post_init__(self):
        if self.start < 0 or self.max_gap_value < 1:
            raise UsageError("Bounded gap tails need start >= 0 and max_gap >= 1.")

    def value(self, i: int) -> int:
        raise UsageError("The members of a bounded gap tail are not known individually.")

    def members_upto(self, bound) -> List[int]:
        raise UsageError("The members of a bounded gap tail are not known individually.")

    def count_upto(self, bound) -> Tuple[int, bool]:
        if bound < self.start:
            return 0, True
        return floor_div(bound, 1) - self.start + 1, False

    def first_member_at_least(self, threshold: int) -> Optional[int]:
        return None

    def first_member_bound(self, threshold: int) -> Optional[int]:
        return max(threshold, self.start) + self.max_gap_value

    def contains(self, m: int) -> bool:
        """True when m may be a member."""
        return m >= self.start

    @property
    def max_gap(self) -> Optional[int]:
        return self.max_gap_value

    def gap_expression(self) -> str:
        return "<= " + str(self.max_gap_value)

    def scaled(self, factor: int) -> IndexSet:
        return BoundedGapTail(self.start * factor, self.max_gap_value * factor)

    def to_json(self) -> dict:
        return {"kind": "BoundedGapTail", "from": self.start, "max_gap": self.max_gap_value}


def index_set_from_json(data: dict) -> IndexSet:
    if not isinstance(data, dict) or "kind" not in data:
        raise UsageError('An index set document has the key "kind".')
    kind = data["kind"]
    try:
        if kind == "All":
            return AllIndices()
        elif kind == "Arithmetic":
            return Arithmetic(int(data["start"]), int(data["step"]))
        elif kind == "PolynomialValues":
            return PolynomialValues(UniPoly.from_json(data["p"]))
        elif kind == "FactorialValues":
            return FactorialValues(int(data.get("scale", 1)))
        elif kind == "Explicit":
            return Explicit(tuple(int(v) for v in data["values"]))
        elif kind == "BoundedGapTail":
            return BoundedGapTail(int(data["from"]), int(data["max_gap"]))
    except KeyError as key:
        raise UsageError("The index set " + str(kind) + " is missing the field " + str(key) + ".")
    raise UsageError("Unknown index set kind " + repr(kind) + ".")
