from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from chern.bundles import (
    ChernData,
    SplittingType,
    chern_of_classification,
    chern_of_extension,
    chern_of_line_quotient,
    triple_c2_identity,
    twist,
    twist_minus_one,
    twist_plus_one,
)
from logmod.classification import classify
from polycore.exceptions import UnsupportedClassificationError
from polycore.polys import parse_poly

XYZ = parse_poly('x*y*z')
FOUR_GENERIC = parse_poly('x*y*z*(x+y+z)')


class ChernOfClassificationTests(SimpleTestCase):
    def test_triangle(self):
        self.assertEqual(chern_of_classification(classify(XYZ), 3), ChernData(2, -2, 1))

    def test_four_generic_lines(self):
        self.assertEqual(chern_of_classification(classify(FOUR_GENERIC), 4), ChernData(2, -3, 3))

    def test_smooth_conic(self):
        self.assertEqual(chern_of_classification(classify(parse_poly('x^2+y^2+z^2')), 2), ChernData(2, -1, 1))

    def test_other_is_rejected(self):
        cls = classify(parse_poly('x*y*z*(x+y+z)*(x+2*y+3*z)'))
        with self.assertRaises(UnsupportedClassificationError):
            chern_of_classification(cls, 5)


class TwistTests(SimpleTestCase):
    def test_twist_minus_one(self):
        self.assertEqual(twist_minus_one(ChernData(2, -2, 1)), ChernData(2, -4, 4))
        self.assertEqual(twist_minus_one(ChernData(2, 0, 0)), ChernData(2, -2, 1))
        self.assertEqual(twist_minus_one(ChernData(2, -3, 3)), ChernData(2, -5, 7))

    @given(st.integers(-10, 10), st.integers(-20, 20), st.integers(-5, 5))
    @settings(max_examples=50, deadline=None)
    def test_twists_round_trip(self, c1, c2, m):
        cd = ChernData(2, c1, c2)
        self.assertEqual(twist_plus_one(twist_minus_one(cd)), cd)
        self.assertEqual(twist(twist(cd, m), -m), cd)

    def test_rank_one_is_rejected(self):
        with self.assertRaises(ValueError):
            twist(ChernData(1, 0, 0), 1)


class LineQuotientTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(chern_of_line_quotient(0), ChernData(0, 1, 1))
        self.assertEqual(chern_of_line_quotient(-2), ChernData(0, 1, 3))
        self.assertEqual(chern_of_line_quotient(1), ChernData(0, 1, 0))

    def test_extension_by_structure_sheaf_resolution(self):
        # 0 -> O(-1) -> O -> O_L -> 0 read backwards.
        self.assertEqual(chern_of_extension(ChernData(1, -1, 0), chern_of_line_quotient(0)), ChernData(1, 0, 0))


class TripleIdentityTests(SimpleTestCase):
    def test_adding_a_generic_line_to_a_triangle(self):
        identity = triple_c2_identity(ChernData(2, -3, 3), ChernData(2, -2, 1), 3, 0)
        self.assertTrue(identity.holds)
        self.assertEqual(identity.residual, 0)

    def test_adding_z_to_two_lines(self):
        identity = triple_c2_identity(
            chern_of_classification(classify(XYZ), 3),
            chern_of_classification(classify(parse_poly('x*y')), 2),
            2, 0,
        )
        self.assertTrue(identity.holds)
        self.assertEqual(identity.residual, 0)

    def test_wrong_eps_is_off_by_one(self):
        identity = triple_c2_identity(ChernData(2, -3, 3), ChernData(2, -2, 1), 3, 1)
        self.assertFalse(identity.holds)
        self.assertEqual(identity.residual, -1)

    def test_empty_restriction_is_rejected(self):
        with self.assertRaises(ValueError):
            triple_c2_identity(ChernData(2, -3, 3), ChernData(2, -2, 1), 0, 0)


class SplittingTypeTests(SimpleTestCase):
    def test_normalized_order(self):
        self.assertEqual(SplittingType.of(2, 1), SplittingType(1, 2))
        with self.assertRaises(ValueError):
            SplittingType(2, 1)
