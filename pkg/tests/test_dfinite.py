import unittest

from coneseries.dfinite.ode import algebraic_to_ode
from coneseries.dfinite.recurrence import (
    LinearODE,
    PRecurrence,
    gap_constant,
    max_zero_run,
    ode_to_recurrence,
    recurrence_terms,
)
from coneseries.kernel.polynomial import BivariatePoly, UniPoly
from coneseries.kernel.taylor import taylor_of_algebraic
from coneseries.standalone.errors import NonpositiveStep, NotSquarefree, UsageError

SQRT_ONE_PLUS_T = BivariatePoly((UniPoly((-1, -1)), UniPoly(), UniPoly((1,))))
SQRT_ONE_PLUS_T2 = BivariatePoly((UniPoly((-1, 0, -1)), UniPoly(), UniPoly((1,))))
CATALAN = BivariatePoly((UniPoly((1,)), UniPoly((-1,)), UniPoly((0, 1))))


def nonzero_gaps(terms) -> int:
    nonzero = [m for m, a in enumerate(terms) if a != 0]
    return max((b - a for a, b in zip(nonzero, nonzero[1:])), default=0)


class TestAlgebraicToODE(unittest.TestCase):
    def test_square_root(self):
        ode = algebraic_to_ode(SQRT_ONE_PLUS_T, 1)
        self.assertEqual(ode.order, 1)
        self.assertEqual(ode.coefficients, (UniPoly((-1,)), UniPoly((2, 2))))

    def test_annihilates_branches(self):
        for q, y0 in [(SQRT_ONE_PLUS_T2, 1), (SQRT_ONE_PLUS_T2, -1), (CATALAN, 1)]:
            ode = algebraic_to_ode(q)
            terms = taylor_of_algebraic(q, y0, 30)
            self.assertTrue(all(r == 0 for r in ode.apply(terms)))

    def test_not_squarefree(self):
        square = BivariatePoly((UniPoly((1,)), UniPoly((-2,)), UniPoly((1,))))
        with self.assertRaises(NotSquarefree):
            algebraic_to_ode(square)

    def test_json(self):
        ode = algebraic_to_ode(SQRT_ONE_PLUS_T)
        self.assertEqual(ode.to_json(), [["-1"], ["2", "2"]])
        self.assertEqual(LinearODE.from_json(ode.to_json()), ode)


class TestRecurrence(unittest.TestCase):
    def setUp(self):
        self.rec = ode_to_recurrence(algebraic_to_ode(SQRT_ONE_PLUS_T, 1))

    def test_square_root_recurrence(self):
        # 2(m+1) a_(m+1) + (2m-1) a_m = 0 up to a constant factor
        self.assertEqual(self.rec.span, 1)
        q0, q1 = self.rec.shifted()
        self.assertEqual(q0 * UniPoly((2, 2)), q1 * UniPoly((-1, 2)))
        terms = taylor_of_algebraic(SQRT_ONE_PLUS_T, 1, 49)
        self.assertEqual(len(self.rec.residuals(terms)), 49)
        self.assertTrue(all(r == 0 for r in self.rec.residuals(terms)))

    def test_unrolled_terms(self):
        terms = recurrence_terms(self.rec, [1], 50)
        self.assertEqual(terms, taylor_of_algebraic(SQRT_ONE_PLUS_T, 1, 49))

    def test_missing_initial_values(self):
        rec = ode_to_recurrence(algebraic_to_ode(SQRT_ONE_PLUS_T2))
        self.assertEqual(rec.span, 2)
        with self.assertRaises(UsageError):
            recurrence_terms(rec, [1], 5)
        self.assertEqual(recurrence_terms(rec, [1, 0], 12), taylor_of_algebraic(SQRT_ONE_PLUS_T2, 1, 11))

    def test_json(self):
        self.assertEqual(PRecurrence.from_json(self.rec.to_json()), self.rec)


class TestGapConstant(unittest.TestCase):
    def test_square_root(self):
        rec = ode_to_recurrence(algebraic_to_ode(SQRT_ONE_PLUS_T, 1))
        bound = gap_constant(rec, (2, 1), (1, -1))
        self.assertEqual((bound.span, bound.r, bound.run, bound.max_gap), (1, 1, 2, 4))
        self.assertEqual(bound.c, 4)
        terms = recurrence_terms(rec, [1], 201)
        self.assertLessEqual(nonzero_gaps(terms), bound.max_gap)
        self.assertEqual(bound.to_json(), {"N": 1, "r": 1, "run": 2, "max_gap": 4, "C": "4"})

    def test_lacunary_branch(self):
        rec = ode_to_recurrence(algebraic_to_ode(SQRT_ONE_PLUS_T2))
        bound = gap_constant(rec, (1,), (1,), cauchy_bound=True)
        terms = recurrence_terms(rec, [1, 0], 201)
        self.assertEqual(max_zero_run(terms), 1)
        self.assertLessEqual(nonzero_gaps(terms), bound.max_gap)
        self.assertGreaterEqual(bound.cauchy_r, bound.r)

    def test_nonpositive_step(self):
        rec = ode_to_recurrence(algebraic_to_ode(SQRT_ONE_PLUS_T, 1))
        with self.assertRaises(NonpositiveStep):
            gap_constant(rec, (1, 1), (1, -1))

    def test_max_zero_run(self):
        self.assertEqual(max_zero_run([1, 0, 0, 1, 0]), 2)
        self.assertEqual(max_zero_run([1, 0, 0, 1, 0], start=3), 1)
        self.assertEqual(max_zero_run([]), 0)
