import os
import random
import unittest
from fractions import Fraction
from math import comb

from coneseries.kernel.linalg import rank, ratfun_kernel, rational_kernel
from coneseries.kernel.polynomial import BivariatePoly, RatFun, UniPoly, cauchy_root_bound, poly_integer_roots
from coneseries.kernel.rational import ceil_div, floor_div, format_rational, parse_rational, parse_vector, primitive
from coneseries.kernel.taylor import series_inverse, series_mul, taylor_of_algebraic
from coneseries.standalone.config import get_settings
from coneseries.standalone.errors import ConeSeriesError, NotSimpleRoot, UsageError, ZeroPolynomial


def _sqrt_one_plus_t() -> BivariatePoly:
    return BivariatePoly((UniPoly((-1, -1)), UniPoly(), UniPoly((1,))))


class TestRational(unittest.TestCase):
    def test_parse_rational(self):
        self.assertEqual(parse_rational("3/6"), Fraction(1, 2))
        self.assertEqual(parse_rational("-7"), Fraction(-7))
        self.assertEqual(parse_rational(4), Fraction(4))
        self.assertEqual(format_rational(Fraction(6, 4)), "3/2")

    def test_parse_rational_rejects_floats(self):
        with self.assertRaises(UsageError):
            parse_rational("0.5")
        with self.assertRaises(UsageError):
            parse_rational("1e3")
        with self.assertRaises(UsageError):
            parse_rational(True)

    def test_parse_vector(self):
        self.assertEqual(parse_vector("1/2,-3"), (Fraction(1, 2), Fraction(-3)))

    def test_primitive(self):
        self.assertEqual(primitive((Fraction(1, 2), Fraction(3, 4))), (2, 3))
        self.assertEqual(primitive((-4, 6)), (-2, 3))
        self.assertEqual(primitive((0, 0)), (0, 0))

    def test_floor_ceil(self):
        self.assertEqual(floor_div(-7, 2), -4)
        self.assertEqual(ceil_div(-7, 2), -3)
        self.assertEqual(ceil_div(Fraction(7, 3), 1), 3)

    def test_usage_error_is_value_error(self):
        self.assertTrue(issubclass(UsageError, ConeSeriesError))
        self.assertTrue(issubclass(ConeSeriesError, ValueError))
        self.assertEqual(UsageError.code, "UsageError")


class TestUniPoly(unittest.TestCase):
    def test_arithmetic(self):
        t = UniPoly.variable()
        p = (t + 1) * (t - 1)
        self.assertEqual(p, UniPoly((-1, 0, 1)))
        self.assertEqual(p.degree, 2)
        q, r = divmod(p, t - 1)
        self.assertEqual(q, t + 1)
        self.assertTrue(r.is_zero())

    def test_trailing_zeros_stripped(self):
        self.assertEqual(UniPoly((1, 2, 0, 0)), UniPoly((1, 2)))
        self.assertTrue(UniPoly((0, 0)).is_zero())

    def test_shift(self):
        p = UniPoly((0, 0, 1))
        self.assertEqual(p.shift(1), UniPoly((1, 2, 1)))

    def test_integer_roots(self):
        p = UniPoly((6, -5, 1)) * UniPoly((0, 2, 1))
        self.assertEqual(poly_integer_roots(p), {0, -2, 2, 3})
        self.assertEqual(poly_integer_roots(UniPoly((1, 0, 1))), set())
        with self.assertRaises(ZeroPolynomial):
            poly_integer_roots(UniPoly())

    def test_integer_roots_against_scan(self):
        rng = random.Random(7)
        for _ in range(100):
            p = UniPoly((rng.randint(1, 4),)) * UniPoly((rng.randint(1, 5), rng.randint(-3, 3), 1))
            for _ in range(rng.randint(0, 4)):
                p = p * UniPoly((-rng.randint(-6, 6), 1))
            scanned = {m for m in range(-12, 13) if p(Fraction(m)) == 0}
            self.assertEqual(poly_integer_roots(p), scanned)

    def test_cauchy_bound(self):
        p = UniPoly((6, -5, 1))
        self.assertGreaterEqual(cauchy_root_bound(p), 3)

    def test_json(self):
        p = UniPoly((Fraction(1, 2), 0, -3))
        self.assertEqual(p.to_json(), ["1/2", "0", "-3"])
        self.assertEqual(UniPoly.from_json(p.to_json()), p)

    def test_ratfun_reduced(self):
        t = UniPoly.variable()
        f = RatFun((t + 1) * (t - 1), (t - 1) * 2)
        self.assertEqual(f(3), Fraction(2))


class TestBivariate(unittest.TestCase):
    def test_squarefree(self):
        self.assertTrue(_sqrt_one_plus_t().is_squarefree())
        square = BivariatePoly((UniPoly((1,)), UniPoly((-2,)), UniPoly((1,))))
        self.assertFalse(square.is_squarefree())

    def test_derivatives(self):
        q = _sqrt_one_plus_t()
        self.assertEqual(q.derivative_y(), BivariatePoly((UniPoly(), UniPoly((2,)))))
        self.assertEqual(q.derivative_t(), BivariatePoly((UniPoly((-1,)),)))
        self.assertEqual(q.at_t(0), UniPoly((-1, 0, 1)))


class TestLinalg(unittest.TestCase):
    def test_rank_and_kernel(self):
        rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
        self.assertEqual(rank(rows), 2)
        kernel = rational_kernel(rows)
        self.assertEqual(len(kernel), 1)
        for row in rows:
            self.assertEqual(sum(a * b for a, b in zip(row, kernel[0])), 0)

    def test_empty_matrix(self):
        with self.assertRaises(UsageError):
            rational_kernel([])
        with self.assertRaises(UsageError):
            ratfun_kernel([])
        with self.assertRaises(UsageError):
            ratfun_kernel([[]])


class TestTaylor(unittest.TestCase):
    def test_series_inverse(self):
        inverse = series_inverse([Fraction(1), Fraction(-1)], 6)
        self.assertEqual(inverse, [Fraction(1)] * 6)
        self.assertEqual(series_mul([1, -1], inverse, 6), [1, 0, 0, 0, 0, 0])

    def test_binomial_coefficients(self):
        terms = taylor_of_algebraic(_sqrt_one_plus_t(), 1, 10)
        self.assertEqual(len(terms), 11)
        for m, a in enumerate(terms):
            self.assertEqual(a, _binomial_half(m))

    def test_other_branch(self):
        terms = taylor_of_algebraic(_sqrt_one_plus_t(), -1, 5)
        self.assertEqual(terms, [-_binomial_half(m) for m in range(6)])

    def test_catalan(self):
        # T*Y^2 - Y + 1 = 0 has the Catalan numbers as the branch with Y(0) = 1
        q = BivariatePoly((UniPoly((1,)), UniPoly((-1,)), UniPoly((0, 1))))
        terms = taylor_of_algebraic(q, 1, 8)
        self.assertEqual(terms, [Fraction(comb(2 * m, m), m + 1) for m in range(9)])

    def test_double_root(self):
        q = BivariatePoly((UniPoly((0, -1)), UniPoly(), UniPoly((1,))))
        with self.assertRaises(NotSimpleRoot):
            taylor_of_algebraic(q, 0, 4)


class TestSettings(unittest.TestCase):
    def test_defaults(self):
        settings = get_settings()
        self.assertEqual(settings["max_dimension"], 4)
        self.assertEqual(settings["gap_horizon"], 50)

    def test_precedence(self):
        os.environ["CONESERIES_MAX_POINTS"] = "17"
        try:
            self.assertEqual(get_settings()["max_points"], 17)
            self.assertEqual(get_settings({"max_points": 5})["max_points"], 5)
            self.assertEqual(get_settings({"max_points": 5}, max_points=3)["max_points"], 3)
        finally:
            del os.environ["CONESERIES_MAX_POINTS"]


def _binomial_half(m: int) -> Fraction:
    result = Fraction(1)
    for i in range(m):
        result *= (Fraction(1, 2) - i) / (i + 1)
    return result
