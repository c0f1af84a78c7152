import random
import unittest

from coneseries.geometry.cone import Cone, first_orthant, relint_dual_contains
from coneseries.kernel.linalg import orthogonal_complement, rank
from coneseries.kernel.rational import dot
from coneseries.orders.order import (
    Comparison,
    VectorOrder,
    compare,
    cone_nonnegative,
    is_nonnegative,
    is_positive,
    refine_over_cone,
    signflip_relint_test,
    weight_order,
)
from coneseries.standalone.errors import BadBasis, ConeNotInHalfSpace, UsageError


class TestCompare(unittest.TestCase):
    def test_weight_preorder(self):
        o = weight_order((1, 2))
        self.assertEqual(compare(o, (2, 0), (0, 1)), Comparison.Equal)
        self.assertEqual(compare(o, (1, 0), (0, 1)), Comparison.Less)
        self.assertEqual(compare(o, (0, 2), (1, 0)), Comparison.Greater)

    def test_lexicographic_tiebreak(self):
        o = VectorOrder(((1, 1), (1, 0)))
        self.assertTrue(o.total)
        self.assertEqual(compare(o, (2, 0), (0, 2)), Comparison.Greater)
        self.assertTrue(is_nonnegative(o, (1, -1)))
        self.assertFalse(is_nonnegative(o, (-1, 1)))

    def test_positive(self):
        self.assertTrue(is_positive(weight_order((1, 2))))
        self.assertFalse(is_positive(weight_order((1, -1))))

    def test_invalid_orders(self):
        with self.assertRaises(UsageError):
            VectorOrder(((0, 0),))
        with self.assertRaises(UsageError):
            VectorOrder(((1, 0), (0, 1), (1, 1)))

    def test_json(self):
        o = VectorOrder(((1, 2), (1, 0)))
        self.assertEqual(o.to_json(), {"vectors": [["1", "2"], ["1", "0"]]})
        self.assertEqual(VectorOrder.from_json(o.to_json()), o)


class TestRefine(unittest.TestCase):
    def test_boundary_weight(self):
        c = first_orthant(2)
        o = refine_over_cone((1, 0), c)
        self.assertTrue(o.total)
        self.assertEqual(o.vectors[0], (1, 0))
        self.assertTrue(cone_nonnegative(o, c))

    def test_three_dimensions(self):
        c = Cone.from_generators([(1, 0, 0), (0, 1, 0), (0, 1, 1), (1, -1, 0)], 3)
        o = refine_over_cone((0, 0, 1), c)
        self.assertTrue(o.total)
        self.assertTrue(cone_nonnegative(o, c))

    def test_not_in_half_space(self):
        with self.assertRaises(ConeNotInHalfSpace):
            refine_over_cone((1, -1), first_orthant(2))


class TestSignFlip(unittest.TestCase):
    def test_bad_basis(self):
        with self.assertRaises(BadBasis):
            signflip_relint_test(first_orthant(2), (1, 1), [(1, 0)])

    def test_agrees_with_relint(self):
        rng = random.Random(1234)
        checked = 0
        while checked < 100:
            dim = rng.choice([2, 3])
            generators = [tuple(rng.randint(-2, 3) for _ in range(dim)) for _ in range(rng.randint(1, 3))]
            c = Cone.from_generators(generators, dim)
            omega = tuple(rng.randint(-2, 3) for _ in range(dim))
            if not c.strongly_convex or all(w == 0 for w in omega):
                continue
            basis = orthogonal_complement([omega], dim)
            self.assertEqual(signflip_relint_test(c, omega, basis), relint_dual_contains(c, omega))
            checked += 1


def _random_vector(rng: random.Random, dim: int, low: int = -4, high: int = 4) -> tuple:
    return tuple(rng.randint(low, high) for _ in range(dim))


class TestOrderProperties(unittest.TestCase):
    def test_total_and_antisymmetric(self):
        rng = random.Random(2024)
        for _ in range(500):
            dim = rng.choice([2, 3, 4])
            vectors = []
            while len(vectors) < dim:
                u = _random_vector(rng, dim)
                if rank(vectors + [u]) > len(vectors):
                    vectors.append(u)
            o = VectorOrder(tuple(vectors))
            alpha, beta = _random_vector(rng, dim), _random_vector(rng, dim)
            forward, backward = compare(o, alpha, beta), compare(o, beta, alpha)
            self.assertEqual(forward, -backward)
            self.assertEqual(forward == Comparison.Equal, alpha == beta)

    def test_translation_invariant(self):
        rng = random.Random(99)
        for _ in range(200):
            dim = rng.choice([2, 3])
            vectors = [_random_vector(rng, dim) for _ in range(rng.randint(1, dim))]
            if any(all(x == 0 for x in u) for u in vectors):
                continue
            o = VectorOrder(tuple(vectors))
            alpha, beta, gamma = (_random_vector(rng, dim) for _ in range(3))
            shifted = compare(o, tuple(a + g for a, g in zip(alpha, gamma)), tuple(b + g for b, g in zip(beta, gamma)))
            self.assertEqual(shifted, compare(o, alpha, beta))

    def test_refinement_on_random_cones(self):
        rng = random.Random(31)
        checked = 0
        while checked < 60:
            dim = rng.choice([2, 3])
            omega = _random_vector(rng, dim, -2, 3)
            if all(w == 0 for w in omega):
                continue
            generators = [g for g in (_random_vector(rng, dim, -2, 3) for _ in range(4)) if dot(omega, g) >= 0]
            c = Cone.from_generators(generators, dim)
            if not c.generators or not c.strongly_convex:
                continue
            o = refine_over_cone(omega, c)
            self.assertTrue(o.total)
            self.assertEqual(o.vectors[0], tuple(omega))
            self.assertTrue(cone_nonnegative(o, c))
            for _ in range(10):
                alpha, beta = _random_vector(rng, dim), _random_vector(rng, dim)
                if dot(omega, alpha) < dot(omega, beta):
                    self.assertEqual(compare(o, alpha, beta), Comparison.Less)
            checked += 1
