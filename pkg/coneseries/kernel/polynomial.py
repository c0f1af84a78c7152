"""
Univariate polynomials over the rationals, rational functions over them and bivariate polynomials in (T, Y).

Ring arithmetic is native on coefficient tuples (lowest degree first); gcd, factorisation and squarefree tests go
through ``sympy.Poly`` over ``QQ``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Sequence, Set, Tuple, Union

import sympy

from coneseries.kernel.rational import Number, format_rational, parse_rational
from coneseries.standalone.errors import UsageError, ZeroPolynomial

SYMBOL_T = sympy.Symbol("T")
SYMBOL_Y = sympy.Symbol("Y")


def _to_fraction(value) -> Fraction:
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@dataclass(frozen=True)
class UniPoly:
    """
    Polynomial with rational coefficients, ``coefficients[i]`` multiplies ``T**i``. Trailing zeros are stripped on
    construction so equal polynomials compare equal.
    """

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        coefficients = [Fraction(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @classmethod
    def constant(cls, c: Number) -> "UniPoly":
        return cls((Fraction(c),))

    @classmethod
    def variable(cls) -> "UniPoly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def monomial(cls, c: Number, degree: int) -> "UniPoly":
        return cls(tuple([Fraction(0)] * degree + [Fraction(c)]))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return len(self.coefficients) == 0

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    @property
    def order(self) -> int:
        """Index of the lowest nonzero coefficient."""
        if self.is_zero():
            raise ZeroPolynomial("The zero polynomial has no lowest term.")
        return next(i for i, c in enumerate(self.coefficients) if c != 0)

    def coefficient(self, i: int) -> Fraction:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return Fraction(0)

    def __call__(self, x):
        result = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def __add__(self, other: Union["UniPoly", Number]) -> "UniPoly":
        other = _as_poly(other)
        n = max(len(self.coefficients), len(other.coefficients))
        return UniPoly(tuple(self.coefficient(i) + other.coefficient(i) for i in range(n)))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Union["UniPoly", Number]) -> "UniPoly":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Number) -> "UniPoly":
        return _as_poly(other) - self

    def __mul__(self, other: Union["UniPoly", Number]) -> "UniPoly":
        other = _as_poly(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        result = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a != 0:
                for j, b in enumerate(other.coefficients):
                    result[i + j] += a * b
        return UniPoly(tuple(result))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        result = UniPoly.constant(1)
        for _ in range(k):
            result = result * self
        return result

    def __divmod__(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroPolynomial("Division by the zero polynomial.")
        remainder = list(self.coefficients)
        quotient = [Fraction(0)] * max(len(remainder) - other.degree, 0)
        while len(remainder) - 1 >= other.degree and any(c != 0 for c in remainder):
            shift = len(remainder) - 1 - other.degree
            factor = remainder[-1] / other.leading
            quotient[shift] = factor
            for i, c in enumerate(other.coefficients):
                remainder[shift + i] -= factor * c
            remainder.pop()
        return UniPoly(tuple(quotient)), UniPoly(tuple(remainder))

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(i * c for i, c in enumerate(self.coefficients) if i > 0))

    def compose(self, inner: "UniPoly") -> "UniPoly":
        result = UniPoly()
        for c in reversed(self.coefficients):
            result = result * inner + c
        return result

    def shift(self, t: Number) -> "UniPoly":
        """Return the polynomial m -> p(m + t)."""
        return self.compose(UniPoly((Fraction(t), Fraction(1))))

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def integer_multiple(self) -> Tuple[int, ...]:
        """Smallest positive multiple with coprime integer coefficients."""
        if self.is_zero():
            raise ZeroPolynomial("The zero polynomial has no integer normalisation.")
        den = 1
        for c in self.coefficients:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in self.coefficients]
        g = 0
        for c in ints:
            g = gcd(g, abs(c))
        return tuple(c // g for c in ints)

    def to_sympy(self, symbol: sympy.Symbol = SYMBOL_T) -> sympy.Poly:
        coefficients = [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)]
        if not coefficients:
            coefficients = [sympy.Integer(0)]
        return sympy.Poly(coefficients, symbol, domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "UniPoly":
        return cls(tuple(_to_fraction(c) for c in reversed(poly.all_coeffs())))

    def gcd(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero():
            return other.monic()
        if other.is_zero():
            return self.monic()
        return UniPoly.from_sympy(sympy.gcd(self.to_sympy(), other.to_sympy())).monic()

    def factor(self) -> List[Tuple["UniPoly", int]]:
        """Irreducible monic factors over the rationals with multiplicities."""
        _, factors = self.to_sympy().factor_list()
        return [(UniPoly.from_sympy(f).monic(), int(k)) for f, k in factors]

    def is_squarefree(self) -> bool:
        return self.gcd(self.derivative()).degree <= 0

    def to_json(self) -> List[str]:
        return [format_rational(c) for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Sequence) -> "UniPoly":
        if not isinstance(data, (list, tuple)):
            raise UsageError("A polynomial is a list of rational coefficients, lowest degree first.")
        return cls(tuple(parse_rational(c) for c in data))

    def __str__(self) -> str:
        return str(self.to_sympy(sympy.Symbol("m")).as_expr())


def _as_poly(value: Union[UniPoly, Number]) -> UniPoly:
    if isinstance(value, UniPoly):
        return value
    return UniPoly.constant(value)


def poly_integer_roots(p: UniPoly) -> Set[int]:
    """
    Integer roots of a polynomial with rational coefficients by rational root enumeration.

    Args:
        p (UniPoly): nonzero polynomial

    Returns:
        set: all integers z with p(z) = 0
    """
    if p.is_zero():
        raise ZeroPolynomial("The zero polynomial vanishes on every integer.")
    ints = p.integer_multiple()
    low = next(i for i, c in enumerate(ints) if c != 0)
    roots = {0} if low > 0 else set()
    constant = ints[low]
    reduced = UniPoly(tuple(ints[low:]))
    for d in sympy.divisors(abs(constant)):
        for z in (int(d), -int(d)):
            if reduced(z) == 0:
                roots.add(z)
    return roots


def cauchy_root_bound(p: UniPoly) -> int:
    """Integer bound on the absolute value of every complex root."""
    if p.is_zero():
        raise ZeroPolynomial("The zero polynomial has no root bound.")
    if p.degree == 0:
        return 0
    ratio = max(abs(c / p.leading) for c in p.coefficients[:-1])
    bound = 1 + ratio
    return -((-bound.numerator) // bound.denominator)


@dataclass(frozen=True)
class RatFun:
    """Quotient num/den of univariate polynomials, reduced with a monic denominator."""

    num: UniPoly
    den: UniPoly = UniPoly((Fraction(1),))

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroPolynomial("Rational function with zero denominator.")
        num, den = self.num, self.den
        if num.is_zero():
            den = UniPoly.constant(1)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading
        object.__setattr__(self, "num", num * (1 / lead))
        object.__setattr__(self, "den", den * (1 / lead))

    @classmethod
    def from_poly(cls, p: Union[UniPoly, Number]) -> "RatFun":
        return cls(_as_poly(p))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatFun") -> "RatFun":
        other = _as_ratfun(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __sub__(self, other: "RatFun") -> "RatFun":
        return self + (-_as_ratfun(other))

    def __mul__(self, other: "RatFun") -> "RatFun":
        other = _as_ratfun(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "RatFun") -> "RatFun":
        other = _as_ratfun(other)
        if other.is_zero():
            raise ZeroPolynomial("Division by the zero rational function.")
        return RatFun(self.num * other.den, self.den * other.num)

    def derivative(self) -> "RatFun":
        return RatFun(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x: Number) -> Fraction:
        return self.num(x) / self.den(x)


def _as_ratfun(value) -> RatFun:
    if isinstance(value, RatFun):
        return value
    return RatFun.from_poly(value)


@dataclass(frozen=True)
class BivariatePoly:
    """
    Polynomial Q(T, Y) = sum_j coefficients[j](T) * Y**j with UniPoly coefficients in T.
    """

    coefficients: Tuple[UniPoly, ...]

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while coefficients and coefficients[-1].is_zero():
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @property
    def degree_y(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return len(self.coefficients) == 0

    def coefficient(self, j: int) -> UniPoly:
        if 0 <= j < len(self.coefficients):
            return self.coefficients[j]
        return UniPoly()

    def derivative_y(self) -> "BivariatePoly":
        return BivariatePoly(tuple(c * j for j, c in enumerate(self.coefficients) if j > 0))

    def derivative_t(self) -> "BivariatePoly":
        return BivariatePoly(tuple(c.derivative() for c in self.coefficients))

    def at_t(self, t: Number) -> UniPoly:
        """The univariate polynomial in Y obtained by substituting T = t."""
        return UniPoly(tuple(c(Fraction(t)) for c in self.coefficients))

    def to_sympy(self) -> sympy.Poly:
        expr = sum(
            (c.to_sympy(SYMBOL_T).as_expr() * SYMBOL_Y**j for j, c in enumerate(self.coefficients)),
            sympy.Integer(0),
        )
        return sympy.Poly(expr, SYMBOL_T, SYMBOL_Y, domain=sympy.QQ)

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "BivariatePoly":
        terms: Dict[int, Dict[int, Fraction]] = {}
        for (i, j), c in poly.terms():
            terms.setdefault(j, {})[i] = _to_fraction(c)
        degree = max(terms.keys(), default=-1)
        coefficients = []
        for j in range(degree + 1):
            column = terms.get(j, {})
            top = max(column.keys(), default=-1)
            coefficients.append(UniPoly(tuple(column.get(i, Fraction(0)) for i in range(top + 1))))
        return cls(tuple(coefficients))

    def is_squarefree(self) -> bool:
        g = sympy.gcd(self.to_sympy(), self.derivative_y().to_sympy())
        return sympy.Poly(g, SYMBOL_T, SYMBOL_Y).degree(SYMBOL_Y) <= 0

    def to_json(self) -> List[List[str]]:
        return [c.to_json() for c in self.coefficients]

    @classmethod
    def from_json(cls, data: Iterable) -> "BivariatePoly":
        if not isinstance(data, (list, tuple)):
            raise UsageError("A bivariate polynomial is a list of T-polynomials, one per power of Y.")
        return cls(tuple(UniPoly.from_json(c) for c in data))
