"""
Linear recurrences with polynomial coefficients and the gap bound derived from them.

A recurrence Q_0, ..., Q_N with start m_min states sum_j Q_j(m + j) * a_(m + j) = 0 for every m >= m_min.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from coneseries.kernel.polynomial import UniPoly, cauchy_root_bound, poly_integer_roots
from coneseries.kernel.rational import Number, as_rational_vector, dot, format_rational
from coneseries.standalone.errors import (
    HorizonExceedsCoefficientKnowledge,
    NonpositiveStep,
    UsageError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearODE:
    """Differential equation sum_j coefficients[j](T) * F^(j)(T) = 0."""

    coefficients: Tuple[UniPoly, ...]

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while coefficients and coefficients[-1].is_zero():
            coefficients.pop()
        if not coefficients:
            raise UsageError("A differential equation needs a nonzero coefficient.")
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def apply(self, terms: Sequence[Fraction]) -> List[Fraction]:
        """Coefficients of T^0, ..., T^(len(terms) - order - 1) of the operator applied to a truncated series."""
        count = len(terms) - self.order
        result = [Fraction(0)] * max(count, 0)
        derivative = [Fraction(t) for t in terms]
        for c in self.coefficients:
            for k, ck in enumerate(c.coefficients):
                for n in range(count - k):
                    if n < len(derivative):
                        result[n + k] += ck * derivative[n]
            derivative = [(i + 1) * derivative[i + 1] for i in range(len(derivative) - 1)]
        return result

    def to_json(self) -> List[List[str]]:
        return [c.to_json() for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence) -> "LinearODE":
        if not isinstance(data, (list, tuple)):
            raise UsageError("A differential equation is a list of T-polynomials, one per derivative order.")
        return cls(tuple(UniPoly.from_json(c) for c in data))


@dataclass(frozen=True)
class PRecurrence:
    qs: Tuple[UniPoly, ...]
    valid_from: int = 0

    def __post_init__(self):
        qs = tuple(self.qs)
        if not qs or qs[-1].is_zero():
            raise UsageError("The leading recurrence polynomial Q_N must be nonzero.")
        object.__setattr__(self, "qs", qs)

    @property
    def span(self) -> int:
        return len(self.qs) - 1

    def shifted(self) -> List[UniPoly]:
        """The coefficient polynomials as functions of m, that is m -> Q_j(m + j)."""
        return [q.shift(j) for j, q in enumerate(self.qs)]

    def residuals(self, terms: Sequence[Number]) -> List[Fraction]:
        """Left hand side of the recurrence for every m >= valid_from covered by the terms."""
        return [
            sum((q(Fraction(m + j)) * terms[m + j] for j, q in enumerate(self.qs)), Fraction(0))
            for m in range(self.valid_from, len(terms) - self.span)
        ]

    def to_json(self) -> dict:
        return {"qs": [q.to_json() for q in self.qs], "valid_from": self.valid_from}

    @classmethod
    def from_json(cls, data: dict) -> "PRecurrence":
        if not isinstance(data, dict) or "qs" not in data:
            raise UsageError('A recurrence document has the key "qs".')
        return cls(tuple(UniPoly.from_json(q) for q in data["qs"]), int(data.get("valid_from", 0)))


@dataclass(frozen=True)
class GapBound:
    span: int
    r: int
    run: int
    max_gap: int
    c: Fraction
    cauchy_r: Optional[int] = None

    def to_json(self) -> dict:
        data = {"N": self.span, "r": self.r, "run": self.run, "max_gap": self.max_gap, "C": format_rational(self.c)}
        if self.cauchy_r is not None:
            data["cauchy_r"] = self.cauchy_r
        return data


def _falling_factorial(x: UniPoly, j: int) -> UniPoly:
    result = UniPoly.constant(1)
    for i in range(j):
        result = result * (x - i)
    return result


def ode_to_recurrence(ode: LinearODE) -> PRecurrence:
    """
    Transcribe a differential equation into the recurrence of its power series solutions.

    The term c * T^k * F^(j) contributes c * (n + s)(n + s - 1)...(n + s - j + 1) * a_(n + s) with s = j - k to the
    coefficient of T^n. Grouping by s and re-indexing from the smallest shift gives Q_0, ..., Q_N.

    Args:
        ode (LinearODE): equation with polynomial coefficients

    Returns:
        PRecurrence: recurrence valid from max(0, smallest shift)
    """
    n = UniPoly.variable()
    by_shift = {}
    for j, c in enumerate(ode.coefficients):
        for k, ck in enumerate(c.coefficients):
            if ck == 0:
                continue
            s = j - k
            term = _falling_factorial(n + s, j) * ck
            by_shift[s] = by_shift.get(s, UniPoly()) + term
    shifts = [s for s, p in by_shift.items() if not p.is_zero()]
    s_min, s_max = min(shifts), max(shifts)
    qs = tuple(by_shift.get(s_min + j, UniPoly()).shift(-j - s_min) for j in range(s_max - s_min + 1))
    logger.debug("recurrence of span %d from an equation of order %d", len(qs) - 1, ode.order)
    return PRecurrence(qs, max(0, s_min))


def recurrence_terms(rec: PRecurrence, initial: Sequence[Number], count: int) -> List[Fraction]:
    """
    Unroll a recurrence from initial values.

    Args:
        rec (PRecurrence): recurrence
        initial (Sequence): a_0, ..., a_(k-1), covering every index where Q_N(m + N) vanishes
        count (int): number of terms to return

    Returns:
        list: a_0, ..., a_(count-1)
    """
    terms = [Fraction(a) for a in initial]
    lead = rec.qs[-1]
    while len(terms) < count:
        index = len(terms)
        m = index - rec.span
        if m < rec.valid_from:
            raise UsageError("The recurrence needs initial values up to index " + str(rec.valid_from + rec.span - 1) + ".")
        denominator = lead(Fraction(index))
        if denominator == 0:
            raise HorizonExceedsCoefficientKnowledge(
                "Q_N vanishes at index " + str(index) + ", the coefficient has to be given as an initial value."
            )
        total = sum((q(Fraction(m + j)) * terms[m + j] for j, q in enumerate(rec.qs[:-1])), Fraction(0))
        terms.append(-total / denominator)
    return terms[:count]


def gap_constant(rec: PRecurrence, omega: Sequence, v: Sequence[int], cauchy_bound: bool = False) -> GapBound:
    """
    Gap bound of a recurrence along the direction v.

    Beyond index r every window of 2(N + r) + 1 consecutive indices of a non-polynomial solution holds two nonzero
    coefficients, so consecutive omega-levels of the ray differ by at most C = 2(N + r) * omega.v.

    Args:
        rec (PRecurrence): recurrence of the ray coefficients
        omega (Sequence): rational weight vector
        v (Sequence): ray direction
        cauchy_bound (bool): also report the bound from complex root magnitudes

    Returns:
        GapBound: N, r, run N + r, index gap 2(N + r) and C
    """
    step = Fraction(dot(as_rational_vector(omega), v))
    if step <= 0:
        raise NonpositiveStep("The direction pairs to " + format_rational(step) + " <= 0 with omega.")
    r = 0
    cauchy_r = 0 if cauchy_bound else None
    for q in rec.shifted():
        if q.is_zero() or q.degree == 0:
            continue
        r = max([r] + [abs(z) for z in poly_integer_roots(q)])
        if cauchy_bound:
            cauchy_r = max(cauchy_r, cauchy_root_bound(q))
    run = rec.span + r
    return GapBound(rec.span, r, run, 2 * run, 2 * run * step, cauchy_r)


def max_zero_run(terms: Sequence[Number], start: int = 0) -> int:
    """Length of the longest block of consecutive zero terms at indices >= start."""
    longest, current = 0, 0
    for a in terms[start:]:
        current = current + 1 if a == 0 else 0
        longest = max(longest, current)
    return longest
