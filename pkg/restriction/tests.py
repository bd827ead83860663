from django.test import SimpleTestCase, override_settings
from django.conf import settings as django_settings
from hypothesis import given, settings, strategies as st

from chern.bundles import SplittingType
from logmod.classification import PlusOneGenerated, classify
from logmod.derivations import Derivation, euler
from polycore.exceptions import InvalidParameterError, UnsupportedClassificationError
from polycore.matrices import contains
from polycore.polys import HomoPoly, LinearForm, parse_poly
from restriction.sampling import random_lines
from restriction.splitting import (
    RestrictedDerivation,
    allowed_pairs,
    generic_splitting,
    image_slices,
    jumping_lines,
    pi_line,
    pi_vector,
    rho,
    splitting_type,
)

XYZ = parse_poly('x*y*z')
NEAR_PENCIL = parse_poly('x*y*z*(x+y)')
FOUR_GENERIC = parse_poly('x*y*z*(x+y+z)')
CONIC = parse_poly('x^2 + y^2 + z^2')
Z_LINE = LinearForm.of(0, 0, 1)


def linear(a, b, c):
    return tuple(parse_poly(p) if p != '0' else HomoPoly.zero(1) for p in (a, b, c))


class RhoTests(SimpleTestCase):
    def test_diagonal_derivation(self):
        restricted = rho(Derivation(1, *linear('x', '-y', '0')), Z_LINE)
        self.assertEqual(restricted.du.coefficient_vector(), [1, 0])
        self.assertEqual(restricted.dv.coefficient_vector(), [0, -1])

    def test_multiple_of_the_line_restricts_to_zero(self):
        theta = Derivation(2, parse_poly('x*z'), parse_poly('y*z'), HomoPoly.zero(2))
        self.assertTrue(rho(theta, Z_LINE).is_zero)

    def test_euler_restricts_to_euler(self):
        restricted = rho(euler(), Z_LINE)
        self.assertEqual(restricted.vector(), (1, 0, 0, 1))

    def test_matrix_form_agrees_with_substitution(self):
        line = LinearForm.of(1, 2, 5)
        theta = Derivation(2, parse_poly('x*y - z^2'), parse_poly('3*x^2'), parse_poly('y*z + x*z'))
        du, dv, normal = pi_line(theta, line)
        expected = tuple(du.coefficient_vector() + dv.coefficient_vector() + normal.coefficient_vector())
        self.assertEqual(pi_vector(theta, line), expected)
        self.assertEqual(RestrictedDerivation.from_vector(2, expected), rho(theta, line))


class ImageSliceTests(SimpleTestCase):
    def test_triangle_on_diagonal(self):
        image = image_slices(XYZ, LinearForm.parse('x - y'), 4)
        self.assertEqual(image.dimension(0), 0)
        self.assertEqual(image.dimension(1), 2)
        self.assertEqual(image.dimension(4), 8)

    def test_generator_images_span_the_kernel_images(self):
        line = LinearForm.of(1, 2, 5)
        for f in (XYZ, NEAR_PENCIL, FOUR_GENERIC, CONIC):
            cls = classify(f)
            from_generators = image_slices(f, line, 2 * f.degree + 2, cls)
            from_kernels = image_slices(f, line, 2 * f.degree + 2)
            for k in range(2 * f.degree + 3):
                self.assertEqual(from_generators.dimension(k), from_kernels.dimension(k), (str(f), k))
                self.assertTrue(contains(from_kernels.slices[k], from_generators.slices[k], 3 * (k + 1)), (str(f), k))


class SplittingTypeTests(SimpleTestCase):
    def test_free_curve_splits_as_its_exponents(self):
        result = splitting_type(XYZ, classify(XYZ), LinearForm.parse('x - y'))
        self.assertEqual(result.split, SplittingType(1, 1))
        self.assertEqual(result.coker_dim, 0)

    def test_four_lines_on_a_generic_line(self):
        result = splitting_type(FOUR_GENERIC, classify(FOUR_GENERIC), LinearForm.of(1, 2, 5))
        self.assertEqual(result.split, SplittingType(1, 2))
        self.assertEqual(result.coker_dim, 1)

    def test_four_lines_on_a_component(self):
        result = splitting_type(FOUR_GENERIC, classify(FOUR_GENERIC), LinearForm.of(1, 0, 0))
        self.assertEqual(result.split, SplittingType(1, 2))
        self.assertEqual(result.coker_dim, 1)

    def test_conic(self):
        result = splitting_type(CONIC, classify(CONIC), LinearForm.of(1, 1, 0))
        self.assertEqual(result.split, SplittingType(0, 1))
        self.assertEqual(result.coker_dim, 1)

    def test_other_is_rejected(self):
        f = parse_poly('x*y*z*(x+y+z)*(x+2*y+3*z)')
        with self.assertRaises(UnsupportedClassificationError):
            splitting_type(f, classify(f), Z_LINE)

    @given(st.tuples(*(st.integers(-4, 4),) * 3).filter(any))
    @settings(max_examples=8, deadline=None)
    def test_yoshinaga_identity_on_random_lines(self, triple):
        line = LinearForm.of(*triple)
        cls = classify(FOUR_GENERIC)
        result = splitting_type(FOUR_GENERIC, cls, line)
        self.assertIn(result.split, allowed_pairs(cls))
        self.assertEqual(result.coker_dim, result.c2 - result.split.a * result.split.b)
        self.assertGreaterEqual(result.coker_dim, 0)


class GenericSplittingTests(SimpleTestCase):
    def test_free_curve(self):
        generic = generic_splitting(XYZ, classify(XYZ), trials=4, seed=7)
        self.assertEqual(generic.split, SplittingType(1, 1))
        self.assertFalse(generic.even_degree_drop)
        self.assertTrue(all(r.coker_dim == 0 for r in generic.results))

    def test_four_lines_drop_by_one(self):
        generic = generic_splitting(FOUR_GENERIC, classify(FOUR_GENERIC), trials=3, seed=7)
        self.assertEqual(generic.split, SplittingType(1, 2))
        self.assertTrue(generic.even_degree_drop)

    def test_conic(self):
        generic = generic_splitting(CONIC, classify(CONIC), trials=3, seed=7)
        self.assertEqual(generic.split, SplittingType(0, 1))

    def test_jumping_lines_of_a_free_curve(self):
        cls = classify(XYZ)
        self.assertEqual(jumping_lines(XYZ, cls, [Z_LINE, LinearForm.of(1, 1, 1)], SplittingType(1, 1)), [])

    def test_lines_off_the_generic_type_are_reported(self):
        cls = classify(FOUR_GENERIC)
        lines = [Z_LINE, LinearForm.of(1, 2, 5)]
        self.assertEqual(jumping_lines(FOUR_GENERIC, cls, lines, SplittingType(1, 2)), [])
        jumps = jumping_lines(FOUR_GENERIC, cls, lines, SplittingType(0, 3))
        self.assertEqual([r.line for r in jumps], lines)


class AllowedPairsTests(SimpleTestCase):
    def pog(self, d2, d3, level):
        return PlusOneGenerated(d2, d3, level, level - d3 + 1, (), (), None)

    def test_values(self):
        self.assertEqual(allowed_pairs(self.pog(2, 2, 2)), {SplittingType(1, 2)})
        self.assertEqual(allowed_pairs(self.pog(1, 1, 1)), {SplittingType(0, 1)})
        self.assertEqual(
            allowed_pairs(self.pog(2, 3, 4)),
            {SplittingType(2, 2), SplittingType(1, 3), SplittingType(0, 4)},
        )

    def test_free_curve_is_rejected(self):
        with self.assertRaises(UnsupportedClassificationError):
            allowed_pairs(classify(XYZ))


class RandomLinesTests(SimpleTestCase):
    def test_same_seed_same_lines(self):
        self.assertEqual(random_lines(10, seed=3), random_lines(10, seed=3))
        self.assertNotEqual(random_lines(10, seed=3), random_lines(10, seed=4))

    def test_components_are_avoided(self):
        for line in random_lines(8, seed=1, avoid=XYZ, coeff_bound=1):
            self.assertNotIn(line, {LinearForm.of(1, 0, 0), LinearForm.of(0, 1, 0), Z_LINE})

    @override_settings(CURVAS={**django_settings.CURVAS, 'DEFAULT_SEED': 11})
    def test_default_seed_comes_from_settings(self):
        self.assertEqual(random_lines(5), random_lines(5, seed=11))

    def test_too_many_lines_for_the_box(self):
        with self.assertRaises(InvalidParameterError) as cm:
            random_lines(20, seed=1, coeff_bound=1)
        self.assertEqual(cm.exception.exit_code, 1)
