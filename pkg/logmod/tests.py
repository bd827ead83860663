from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from logmod.classification import (
    CurveKind,
    classify,
    predicted_plus_one_dimension,
    relation_vanishes_nowhere,
    saito_check,
)
from logmod.derivations import Derivation, euler
from logmod.oracle import dense_syzygy_dimension
from logmod.syzygies import (
    ar_coordinates,
    generators_in_degree,
    graded_slice,
    jacobian_data,
    mdr,
    minimal_generators,
    relation_degrees,
    require_reduced,
    syzygy_space,
    syzygy_vectors,
)
from polycore.exceptions import InvalidParameterError, NonReducedError
from polycore.polys import HomoPoly, LinearForm, parse_poly

XYZ = parse_poly('x*y*z')
XY = parse_poly('x*y')
PENCIL = parse_poly('x*y*(x+y)')
NEAR_PENCIL = parse_poly('x*y*z*(x+y)')
FOUR_GENERIC = parse_poly('x*y*z*(x+y+z)')
FIVE_LINES = parse_poly('x*y*z*(x+y+z)*(x+y)')
CONIC = parse_poly('x^2 + y^2 + z^2')


def derivation(a, b, c, degree):
    return Derivation(degree, *(parse_poly(p) if p != '0' else HomoPoly.zero(degree) for p in (a, b, c)))


class SyzygySpaceTests(SimpleTestCase):
    def test_triangle_has_no_constant_syzygy(self):
        self.assertEqual(syzygy_space(XYZ, 0), [])

    def test_triangle_linear_syzygies(self):
        space = syzygy_space(XYZ, 1)
        self.assertEqual(len(space), 2)
        for theta in space:
            self.assertTrue(theta.apply(XYZ).is_zero)

    def test_two_lines_constant_syzygy_is_dz(self):
        (theta,) = syzygy_space(XY, 0)
        self.assertTrue(theta.a.is_zero and theta.b.is_zero)
        self.assertFalse(theta.c.is_zero)

    def test_graded_slice_dimensions(self):
        piece = graded_slice(XYZ, 3)
        self.assertEqual([piece.dimension(k) for k in range(4)], [0, 2, 6, 12])

    def test_non_reduced_input(self):
        with self.assertRaises(NonReducedError) as cm:
            syzygy_vectors(parse_poly('x^2*y'), 1)
        self.assertEqual(cm.exception.square_degree, 1)
        with self.assertRaises(NonReducedError):
            require_reduced(parse_poly('(x+y)^2*z^2'))


class MdrTests(SimpleTestCase):
    def test_mdr_values(self):
        self.assertEqual(mdr(XY), 0)
        self.assertEqual(mdr(XYZ), 1)
        self.assertEqual(mdr(CONIC), 1)

    def test_mdr_is_the_smaller_exponent(self):
        for f in (XY, XYZ, PENCIL, NEAR_PENCIL, FOUR_GENERIC, FIVE_LINES, CONIC, parse_poly('x*(y^2 - x*z)')):
            cls = classify(f)
            self.assertEqual(mdr(f), cls.mdr, str(f))
            self.assertEqual(mdr(f), min(cls.exponents), str(f))


class GeneratorTests(SimpleTestCase):
    def degrees(self, f):
        return [d for d, _ in minimal_generators(f, 2 * f.degree)]

    def test_generator_degrees(self):
        self.assertEqual(self.degrees(XYZ), [1, 1])
        self.assertEqual(self.degrees(FOUR_GENERIC), [2, 2, 2])
        self.assertEqual(self.degrees(PENCIL), [0, 2])

    def test_relation_degrees(self):
        for f, expected in ((XYZ, []), (FOUR_GENERIC, [3]), (CONIC, [2])):
            generators = minimal_generators(f, 2 * f.degree)
            relations = relation_degrees(f, generators, 2 * f.degree)
            self.assertEqual([r.degree for r in relations], expected)

    def test_four_lines_relation_is_linear(self):
        generators = minimal_generators(FOUR_GENERIC, 8)
        (relation,) = relation_degrees(FOUR_GENERIC, generators, 8)
        self.assertEqual(relation.coefficient_degrees, (1, 1, 1))

    def test_bound_below_degree(self):
        with self.assertRaises(InvalidParameterError):
            minimal_generators(XYZ, 2)
        with self.assertRaises(InvalidParameterError):
            classify(FOUR_GENERIC, 3)

    def test_basis_coordinates_are_unit_vectors(self):
        for k in range(4):
            basis = syzygy_vectors(FOUR_GENERIC, k)
            coordinates = ar_coordinates(FOUR_GENERIC, k, basis)
            self.assertEqual(coordinates, [tuple(int(i == j) for j in range(len(basis))) for i in range(len(basis))])

    def test_degree_by_degree_matches_the_window(self):
        for f in (XYZ, PENCIL, FOUR_GENERIC, CONIC):
            found = []
            for k in range(2 * f.degree + 1):
                found.extend(generators_in_degree(f, k, found))
            self.assertEqual(tuple(found), minimal_generators(f, 2 * f.degree), str(f))


class ClassifyTests(SimpleTestCase):
    def assertFree(self, f, exponents):
        cls = classify(f)
        self.assertEqual(cls.kind, CurveKind.FREE, f)
        self.assertEqual(tuple(sorted(cls.exponents)), exponents)
        self.assertNotEqual(cls.saito_constant, 0)

    def test_free_arrangements(self):
        self.assertFree(XYZ, (1, 1))
        self.assertFree(XY, (0, 1))
        self.assertFree(PENCIL, (0, 2))
        self.assertFree(NEAR_PENCIL, (1, 2))
        self.assertFree(FIVE_LINES, (2, 2))

    def test_conic_with_tangent_is_free(self):
        self.assertFree(parse_poly('x*(y^2 - x*z)'), (1, 1))

    def test_four_generic_lines(self):
        cls = classify(FOUR_GENERIC)
        self.assertEqual(cls.kind, CurveKind.PLUS_ONE)
        self.assertEqual((cls.d2, cls.d3, cls.level, cls.nu), (2, 2, 2, 1))
        self.assertTrue(cls.nearly_free)

    def test_smooth_conic(self):
        cls = classify(CONIC)
        self.assertEqual(cls.kind, CurveKind.PLUS_ONE)
        self.assertEqual((cls.d2, cls.d3, cls.level, cls.nu), (1, 1, 1, 1))

    def test_five_generic_lines_are_other(self):
        cls = classify(parse_poly('x*y*z*(x+y+z)*(x+2*y+3*z)'))
        self.assertEqual(cls.kind, CurveKind.OTHER)
        self.assertEqual(cls.mdr, 3)
        self.assertFalse(cls.bound_limited)

    def test_summary_blocks(self):
        self.assertEqual(classify(XYZ).summary()['generator_degrees'], (1, 1))
        summary = classify(FOUR_GENERIC).summary()
        self.assertEqual(summary['relation_degree'], 3)
        self.assertEqual(summary['exponents'], (2, 2))

    def test_exhaustive_window_matches_the_early_answer(self):
        for f in (XYZ, NEAR_PENCIL, FOUR_GENERIC, FIVE_LINES, CONIC):
            self.assertEqual(classify(f, exhaustive=True), classify(f), str(f))

    def test_hilbert_function_beyond_the_scan(self):
        for f in (NEAR_PENCIL, FOUR_GENERIC, CONIC):
            cls = classify(f)
            for k in range(2 * f.degree + 3):
                self.assertEqual(cls.hilbert_dimension(k), len(syzygy_vectors(f, k)), (str(f), k))

    def test_plus_one_relations_vanish_nowhere(self):
        for f in (FOUR_GENERIC, CONIC):
            cls = classify(f)
            self.assertTrue(cls.certified)
            self.assertTrue(relation_vanishes_nowhere(cls.relation))

    def test_relation_with_a_common_zero(self):
        x, y, z = (parse_poly(v) for v in 'xyz')
        self.assertTrue(relation_vanishes_nowhere((x, y, z)))
        self.assertFalse(relation_vanishes_nowhere((x, x, y)))
        self.assertFalse(relation_vanishes_nowhere((parse_poly('x*y'), parse_poly('x*z'), parse_poly('y + z'))))

    def test_hilbert_function_of_plus_one_resolution(self):
        for k in range(9):
            self.assertEqual(
                len(syzygy_vectors(FOUR_GENERIC, k)),
                predicted_plus_one_dimension(k, 2, 2, 2),
            )


class SaitoTests(SimpleTestCase):
    def test_triangle_determinant(self):
        result = saito_check(XYZ, derivation('x', '-y', '0', 1), derivation('0', 'y', '-z', 1))
        self.assertTrue(result.passed)
        self.assertEqual(result.constant, 3)

    def test_repeated_derivation_fails(self):
        theta = derivation('x', '-y', '0', 1)
        result = saito_check(XYZ, theta, theta)
        self.assertFalse(result.passed)
        self.assertEqual(result.constant, 0)

    def test_pencil_determinant_is_three_times_f(self):
        q = PENCIL
        dz = derivation('0', '0', '1', 0)
        hamiltonian = derivation('x^2 + 2*x*y', '-(2*x*y + y^2)', '0', 2)
        self.assertTrue(hamiltonian.apply(q).is_zero)
        result = saito_check(q, dz, hamiltonian)
        self.assertTrue(result.passed)
        self.assertEqual(abs(result.constant), 3)

    def test_non_syzygy_is_rejected(self):
        with self.assertRaises(ValueError):
            saito_check(XYZ, euler(), derivation('x', '-y', '0', 1))


class JacobianDataTests(SimpleTestCase):
    def test_syzygy_dimension_matches_jacobian_count(self):
        for f in (XYZ, CONIC, FOUR_GENERIC):
            data = jacobian_data(f, 2 * f.degree + f.degree - 1)
            for k in range(2 * f.degree + 1):
                self.assertEqual(data.dim_ar(k), len(syzygy_vectors(f, k)), (str(f), k))


class OracleTests(SimpleTestCase):
    """The dense undetermined-coefficient solve agrees with the degreewise kernels."""

    def test_corpus_curves_small_degrees(self):
        for f in (XY, XYZ, PENCIL, CONIC, parse_poly('x*(y^2 - x*z)')):
            for k in range(2 * f.degree + 1):
                self.assertEqual(dense_syzygy_dimension(f, k), len(syzygy_vectors(f, k)), (str(f), k))

    def test_four_lines_up_to_degree_four(self):
        for k in range(5):
            self.assertEqual(dense_syzygy_dimension(FOUR_GENERIC, k), len(syzygy_vectors(FOUR_GENERIC, k)))

    @given(st.lists(st.tuples(*(st.integers(-3, 3),) * 3).filter(any), min_size=2, max_size=4, unique=True))
    @settings(max_examples=10, deadline=None)
    def test_random_arrangements(self, triples):
        lines = {LinearForm.of(*t) for t in triples}
        f = parse_poly('*'.join(f'({l})' for l in lines))
        for k in range(f.degree + 1):
            self.assertEqual(dense_syzygy_dimension(f, k), len(syzygy_vectors(f, k)))
