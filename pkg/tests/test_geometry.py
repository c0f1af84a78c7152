import random
import unittest

from coneseries.geometry.cone import (
    Cone,
    cone_contains,
    cone_intersection,
    cone_join,
    dual_cone,
    first_orthant,
    interior_vector,
    is_extreme_ray,
    is_strongly_convex,
    relint_dual_contains,
    separating_omega,
    shift_containment,
)
from coneseries.kernel.rational import dot, sub
from coneseries.standalone.errors import (
    DimensionMismatch,
    DimensionUnsupported,
    IntersectionNotFullDimensional,
    NotAVertex,
    NotStronglyConvex,
)


def random_cone(rng: random.Random, dim: int) -> Cone:
    count = rng.randint(1, 4)
    generators = [tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(count)]
    return Cone.from_generators(generators, dim)


class TestCone(unittest.TestCase):
    def test_strongly_convex_example(self):
        c = Cone.from_generators([(0, 1), (1, 0), (-1, 1)], 2)
        self.assertEqual(c.generators, ((-1, 1), (1, 0)))
        self.assertTrue(is_strongly_convex(c))
        self.assertEqual(dual_cone(c).generators, ((0, 1), (1, 1)))

    def test_half_plane(self):
        c = Cone.from_generators([(1, 0), (-1, 0), (0, 1)], 2)
        self.assertFalse(is_strongly_convex(c))
        self.assertEqual(c.lineality_basis, [(1, 0)])
        self.assertEqual(c.dual.generators, ((0, 1),))
        with self.assertRaises(NotStronglyConvex):
            relint_dual_contains(c, (1, 1))

    def test_contains(self):
        c = first_orthant(2)
        self.assertTrue(cone_contains(c, (0, 3)))
        self.assertFalse(cone_contains(c, (1, -1)))
        with self.assertRaises(DimensionMismatch):
            cone_contains(c, (1, 1, 1))

    def test_relint_dual(self):
        c = first_orthant(3)
        self.assertTrue(relint_dual_contains(c, (1, 2, 3)))
        self.assertFalse(relint_dual_contains(c, (1, 0, 3)))

    def test_join_and_intersection(self):
        e1 = Cone.from_generators([(1, 0)], 2)
        e2 = Cone.from_generators([(0, 1)], 2)
        self.assertEqual(cone_join(e1, e2), first_orthant(2))
        upper = Cone.from_generators([(1, 0), (-1, 0), (0, 1)], 2)
        right = Cone.from_generators([(0, 1), (0, -1), (1, 0)], 2)
        self.assertEqual(cone_intersection(upper, right), first_orthant(2))

    def test_dimension_cap(self):
        with self.assertRaises(DimensionUnsupported):
            Cone.from_generators([(1, 0, 0, 0, 0)], 5)
        with self.assertRaises(DimensionUnsupported):
            dual_cone(Cone(dim=5, generators=((1, 0, 0, 0, 0),)))

    def test_json(self):
        c = Cone.from_generators([(2, 0), (0, 3)], 2)
        self.assertEqual(c.to_json(), {"dim": 2, "generators": [[0, 1], [1, 0]]})
        self.assertEqual(Cone.from_json(c.to_json()), c)


class TestRandomCones(unittest.TestCase):
    def test_double_dual(self):
        rng = random.Random(20240517)
        for _ in range(200):
            c = random_cone(rng, rng.choice([2, 3]))
            self.assertEqual(c.dual.dual, c)
            for g in c.generators:
                self.assertTrue(cone_contains(c, g))
                for d in c.dual.generators:
                    self.assertGreaterEqual(dot(d, g), 0)

    def test_interior_of_dual(self):
        rng = random.Random(7)
        for _ in range(200):
            c = random_cone(rng, rng.choice([2, 3]))
            if c.strongly_convex:
                self.assertTrue(relint_dual_contains(c, interior_vector(c.dual)))
            else:
                self.assertLess(c.dual.dimension, c.dim)


class TestShift(unittest.TestCase):
    def test_shift_containment(self):
        c = first_orthant(2)
        gamma1, gamma2 = (-1, 2), (0, -3)
        gamma = shift_containment(gamma1, c, gamma2, c)
        self.assertEqual(gamma, (-3, -3))
        self.assertTrue(cone_contains(c, sub(gamma1, gamma)))
        self.assertTrue(cone_contains(c, sub(gamma2, gamma)))

    def test_shift_mixed_cones(self):
        c1 = Cone.from_generators([(1, 0), (1, 1)], 2)
        c2 = Cone.from_generators([(1, -1), (0, 1)], 2)
        gamma1, gamma2 = (0, 0), (2, 5)
        gamma = shift_containment(gamma1, c1, gamma2, c2)
        intersection = cone_intersection(c1, c2)
        self.assertTrue(cone_contains(intersection, sub(gamma1, gamma)))
        self.assertTrue(cone_contains(intersection, sub(gamma2, gamma)))

    def test_lower_dimensional_intersection(self):
        c1 = first_orthant(2)
        c2 = Cone.from_generators([(-1, 0), (0, 1)], 2)
        with self.assertRaises(IntersectionNotFullDimensional):
            shift_containment((0, 0), c1, (0, 0), c2)


class TestSeparatingOmega(unittest.TestCase):
    def test_vertex(self):
        tau = Cone.from_generators([(1, 0), (0, 1), (1, -1)], 2)
        v = (1, -1)
        self.assertTrue(is_extreme_ray(tau, v))
        omega = separating_omega(tau, v)
        self.assertGreater(dot(omega, v), 0)
        self.assertLess(dot(omega, v), omega[1])
        for g in tau.generators:
            self.assertGreaterEqual(dot(omega, g), 0)

    def test_not_a_vertex(self):
        tau = Cone.from_generators([(1, 0), (0, 1), (1, -1)], 2)
        with self.assertRaises(NotAVertex):
            separating_omega(tau, (1, 0))
        with self.assertRaises(NotAVertex):
            separating_omega(tau, (2, -1))
