import unittest
from fractions import Fraction

from coneseries.base.executor import BatchExecutor
from coneseries.kernel.polynomial import BivariatePoly, UniPoly
from coneseries.kernel.taylor import taylor_of_algebraic
from coneseries.series.laurent import (
    ConstantRule,
    ExplicitRule,
    KnownRegion,
    LaurentSeriesValue,
    RaySeries,
    TaylorRule,
    combine,
    initial_part,
    nu_omega,
    ray_part,
    retruncate,
    rule_from_json,
    substitute,
)
from coneseries.standalone.errors import (
    DimensionMismatch,
    HorizonExceedsCoefficientKnowledge,
    HorizonExceedsKnowledge,
    NoMinimum,
    UsageError,
)
from coneseries.support.indexset import AllIndices, Explicit, PolynomialValues
from coneseries.support.spec import SupportSpec

SQUARES = PolynomialValues(UniPoly((0, 0, 1)))


def squares_series() -> LaurentSeriesValue:
    ray = RaySeries((0, 0), (-1, 1), SQUARES, ConstantRule(Fraction(1)))
    return LaurentSeriesValue(2, rays=(ray,))


class TestLaurentSeriesValue(unittest.TestCase):
    def test_polynomial(self):
        f = LaurentSeriesValue.polynomial({(1, 0): 1, (0, 1): 2, (0, 0): 0})
        self.assertEqual(f.dim, 2)
        self.assertEqual(f.term_dict, {(0, 1): Fraction(2), (1, 0): Fraction(1)})
        self.assertFalse(f.is_zero())
        self.assertTrue(LaurentSeriesValue.zero(2).is_zero())

    def test_support_checked(self):
        support = SupportSpec(dim=2, points=((0, 0),))
        with self.assertRaises(UsageError):
            LaurentSeriesValue(2, (((1, 0), Fraction(1)),), support=support)

    def test_json(self):
        f = LaurentSeriesValue(
            2,
            (((0, 0), Fraction(1, 2)),),
            rays=(RaySeries((1, 0), (-1, 1), AllIndices(), ExplicitRule((Fraction(1), Fraction(-1)))),),
            known=KnownRegion((Fraction(1), Fraction(2)), Fraction(3)),
        )
        self.assertEqual(LaurentSeriesValue.from_json(f.to_json()), f)
        self.assertEqual(f.to_json()["terms"], [[[0, 0], "1/2"]])
        self.assertEqual(f.to_json()["known_region"], {"omega": ["1", "2"], "degree": "3"})

    def test_rules(self):
        self.assertEqual(rule_from_json(ConstantRule(Fraction(3)).to_json()), ConstantRule(Fraction(3)))
        with self.assertRaises(UsageError):
            rule_from_json({"kind": "random"})
        with self.assertRaises(HorizonExceedsCoefficientKnowledge):
            ExplicitRule((Fraction(1),)).coefficient(3)
        q = BivariatePoly((UniPoly((-1, -1)), UniPoly(), UniPoly((1,))))
        rule = TaylorRule(q, Fraction(1))
        self.assertEqual(rule.coefficients(3), [Fraction(1), Fraction(1, 2), Fraction(-1, 8)])
        self.assertEqual(rule.coefficient(3), Fraction(1, 16))

    def test_rule_prefix_shared_between_workers(self):
        q = BivariatePoly((UniPoly((-1, -1)), UniPoly(), UniPoly((1,))))
        rule = TaylorRule(q, Fraction(1))
        expected = taylor_of_algebraic(q, 1, 40)
        with BatchExecutor(max_workers=4) as exe:
            self.assertEqual(exe.map_ordered(rule.coefficient, range(41)), expected)
        self.assertEqual(rule.coefficients(70)[:41], expected)
        self.assertEqual(rule.coefficients(5), expected[:5])


class TestValuation(unittest.TestCase):
    def test_nu_omega_polynomial(self):
        f = LaurentSeriesValue.polynomial({(1, 0): 1, (0, 1): 1})
        self.assertEqual(nu_omega(f, (1, 2)), 1)
        self.assertEqual(initial_part(f, (1, 2)).term_dict, {(1, 0): Fraction(1)})
        self.assertEqual(len(initial_part(f, (1, 1)).terms), 2)

    def test_nu_omega_puiseux(self):
        f = LaurentSeriesValue.monomial((1, 0), ramification=2)
        self.assertEqual(nu_omega(f, (1, 2)), Fraction(1, 2))

    def test_ray_valuation(self):
        f = squares_series()
        self.assertEqual(nu_omega(f, (1, 2)), 0)
        with self.assertRaises(NoMinimum):
            nu_omega(f, (2, 1))
        with self.assertRaises(NoMinimum):
            nu_omega(LaurentSeriesValue.zero(2), (1, 1))

    def test_finite_ray_decreasing_under_omega(self):
        ray = RaySeries((0, 0), (1, -1), Explicit((0, 3)), ConstantRule(Fraction(1)))
        f = LaurentSeriesValue(2, rays=(ray,))
        self.assertEqual(nu_omega(f, (1, 2)), -3)
        self.assertEqual(initial_part(f, (1, 2)).term_dict, {(3, -3): Fraction(1)})

    def test_cancelled_terms_are_skipped(self):
        ray = RaySeries((0, 0), (1, 0), AllIndices(), ConstantRule(Fraction(1)))
        f = LaurentSeriesValue(2, (((0, 0), Fraction(-1)),), rays=(ray,))
        self.assertEqual(nu_omega(f, (1, 1)), 1)
        self.assertEqual(initial_part(f, (1, 1)).term_dict, {(1, 0): Fraction(1)})
        first = RaySeries((0, 0), (1, 0), Explicit((0, 1)), ConstantRule(Fraction(1)))
        second = RaySeries((0, 0), (0, 1), Explicit((0, 2)), ConstantRule(Fraction(-1)))
        g = LaurentSeriesValue(2, rays=(first, second))
        self.assertEqual(nu_omega(g, (1, 1)), 1)
        self.assertEqual(nu_omega(g, (2, 1)), 2)

    def test_initial_part_keeps_level_ray(self):
        f = squares_series()
        init = initial_part(f, (1, 1))
        self.assertEqual(len(init.rays), 1)
        init = initial_part(f, (1, 2))
        self.assertEqual(init.term_dict, {(0, 0): Fraction(1)})
        self.assertEqual(init.rays, ())

    def test_retruncate(self):
        self.assertIsNone(retruncate(LaurentSeriesValue.one(2), (1, 1)))
        f = LaurentSeriesValue(2, (((0, 0), Fraction(1)),), known=KnownRegion((Fraction(1), Fraction(1)), Fraction(2)))
        self.assertEqual(retruncate(f, (2, 2)), 4)


class TestRayPart(unittest.TestCase):
    def test_squares(self):
        part = ray_part(squares_series(), (0, 0), (-1, 1))
        self.assertTrue(part.on_ray)
        self.assertEqual(part.prefix(10), [1, 1, 0, 0, 1, 0, 0, 0, 0, 1])

    def test_off_ray(self):
        f = LaurentSeriesValue.polynomial({(0, 0): 1, (1, 1): 1})
        self.assertFalse(ray_part(f, (0, 0), (1, 0)).on_ray)


class TestArithmetic(unittest.TestCase):
    def test_add_and_multiply(self):
        f = LaurentSeriesValue.polynomial({(0, 0): 1, (1, 0): 1})
        g = LaurentSeriesValue.polynomial({(0, 0): 1, (1, 0): -1})
        self.assertEqual(combine(f, g, "add", (1, 1), 5).term_dict, {(0, 0): Fraction(2)})
        product = combine(f, g, "multiply", (1, 1), 2)
        self.assertEqual(product.term_dict, {(0, 0): Fraction(1), (2, 0): Fraction(-1)})
        self.assertEqual(product.known.degree, 2)
        self.assertEqual(combine(f, g, "multiply", (1, 1), 1).term_dict, {(0, 0): Fraction(1)})

    def test_mixed_ramification(self):
        root = LaurentSeriesValue.monomial((1, 0), ramification=2)
        x1 = LaurentSeriesValue.monomial((1, 0))
        product = combine(root, x1, "multiply", (1, 1), 2)
        self.assertEqual(product.ramification, 2)
        self.assertEqual(product.term_dict, {(3, 0): Fraction(1)})

    def test_horizon_beyond_knowledge(self):
        f = LaurentSeriesValue(2, (((0, 0), Fraction(1)),), known=KnownRegion((Fraction(1), Fraction(1)), Fraction(2)))
        with self.assertRaises(HorizonExceedsKnowledge):
            combine(f, LaurentSeriesValue.one(2), "add", (1, 1), 3)

    def test_errors(self):
        with self.assertRaises(UsageError):
            combine(LaurentSeriesValue.one(2), LaurentSeriesValue.one(2), "divide", (1, 1), 1)
        with self.assertRaises(DimensionMismatch):
            combine(LaurentSeriesValue.one(2), LaurentSeriesValue.one(3), "add", (1, 1), 1)

    def test_substitute_root(self):
        p = [
            LaurentSeriesValue.polynomial({(2, 0): -1}),
            LaurentSeriesValue.zero(2),
            LaurentSeriesValue.one(2),
        ]
        xi = LaurentSeriesValue.monomial((1, 0))
        self.assertTrue(substitute(p, xi, (1, 1), 5).is_zero())
        residual = substitute(p, LaurentSeriesValue.monomial((0, 1)), (1, 1), 5)
        self.assertEqual(residual.term_dict, {(0, 2): Fraction(1), (2, 0): Fraction(-1)})
