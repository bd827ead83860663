from django.test import SimpleTestCase

from polycore.exceptions import LineComponentError, NonReducedError, UnsupportedClassificationError
from polycore.polys import LinearForm, parse_poly
from triples.deletion import EpsSource, delete_line, make_triple
from triples.exactness import check_exact_sequence, log_derivations
from triples.singular import lines_through_pairs, singular_points
from triples.theorems import (
    Mode,
    Theorem,
    Verdict,
    characterize_freeness,
    free_ordering,
    solve_epsilon,
    verify_addition,
    verify_addition_converse,
    verify_deletion,
    verify_deletion_inverse,
    verify_equivalence,
)

XY = parse_poly('x*y')
XYZ = parse_poly('x*y*z')
PENCIL = parse_poly('x*y*(x+y)')
NEAR_PENCIL = parse_poly('x*y*z*(x+y)')
FOUR_GENERIC = parse_poly('x*y*z*(x+y+z)')
FIVE_LINES = parse_poly('x*y*z*(x+y+z)*(x+y)')
RATIONAL_CONIC = parse_poly('y^2 - x*z')

X = LinearForm.of(1, 0, 0)
Z = LinearForm.of(0, 0, 1)
X_PLUS_Y = LinearForm.of(1, 1, 0)
GENERIC = LinearForm.of(1, 2, 5)


class MakeTripleTests(SimpleTestCase):
    def test_cardinalities(self):
        self.assertEqual(make_triple(XY, Z).card, 2)
        self.assertEqual(make_triple(PENCIL, Z).card, 3)
        self.assertEqual(make_triple(FOUR_GENERIC, X_PLUS_Y).card, 2)

    def test_eps_defaults_to_zero(self):
        t = make_triple(XY, Z)
        self.assertEqual((t.eps, t.eps_source), (0, EpsSource.ASSUMED_ZERO))
        self.assertEqual(t.f, XYZ)

    def test_user_eps(self):
        t = make_triple(XY, Z, eps=1)
        self.assertEqual((t.eps, t.eps_source, t.count), (1, EpsSource.USER, 3))

    def test_component_cannot_be_added(self):
        with self.assertRaises(LineComponentError):
            make_triple(XYZ, Z)


class DeleteLineTests(SimpleTestCase):
    def test_examples(self):
        t = delete_line(XYZ, Z)
        self.assertEqual((t.f_prime, t.card), (XY, 2))
        t = delete_line(NEAR_PENCIL, Z)
        self.assertEqual((t.f_prime, t.card), (PENCIL, 3))
        t = delete_line(FIVE_LINES, X_PLUS_Y)
        self.assertEqual((t.f_prime, t.card), (FOUR_GENERIC, 2))

    def test_round_trip(self):
        t = delete_line(FIVE_LINES, X_PLUS_Y)
        self.assertEqual(X_PLUS_Y.as_poly() * t.f_prime, FIVE_LINES)

    def test_not_a_component(self):
        with self.assertRaises(LineComponentError):
            delete_line(XY, Z)

    def test_double_line(self):
        with self.assertRaises(NonReducedError):
            delete_line(parse_poly('x^2*y'), X)


class AdditionTests(SimpleTestCase):
    def test_two_lines_plus_z_is_free(self):
        report = verify_addition(make_triple(XY, Z))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['branch'], 'free')
        self.assertEqual(report.computed, {'kind': 'free', 'exponents': (1, 1)})

    def test_generic_line_on_a_triangle_is_plus_one(self):
        report = verify_addition(make_triple(XYZ, GENERIC))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['branch'], 'plus_one')
        self.assertEqual(report.predicted, {'kind': 'plus_one_generated', 'exponents': (2, 2), 'level': 2})

    def test_pencil_plus_z(self):
        report = verify_addition(make_triple(PENCIL, Z))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['ordering'], (2, 0))
        self.assertEqual(report.computed['exponents'], (1, 2))

    def test_non_free_curve(self):
        report = verify_addition(make_triple(FOUR_GENERIC, GENERIC))
        self.assertEqual(report.verdict, Verdict.HYPOTHESIS_NOT_MET)


class DeletionTests(SimpleTestCase):
    def test_near_pencil(self):
        report = verify_deletion(delete_line(NEAR_PENCIL, Z))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.computed, {'kind': 'free', 'exponents': (0, 2)})

    def test_five_lines(self):
        report = verify_deletion(delete_line(FIVE_LINES, X_PLUS_Y))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.computed, {'kind': 'plus_one_generated', 'exponents': (2, 2), 'level': 2})

    def test_triangle(self):
        report = verify_deletion(delete_line(XYZ, Z))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.computed['exponents'], (0, 1))


class ConverseTests(SimpleTestCase):
    def test_addition_converse_on_every_component(self):
        for line in (X, LinearForm.of(0, 1, 0), Z, LinearForm.of(1, 1, 1)):
            report = verify_addition_converse(delete_line(FOUR_GENERIC, line))
            self.assertEqual(report.verdict, Verdict.CONFIRMED, str(line))
            self.assertEqual(report.computed, {'kind': 'free', 'exponents': (1, 1)})

    def test_deletion_inverse(self):
        report = verify_deletion_inverse(make_triple(FOUR_GENERIC, X_PLUS_Y))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.computed, {'kind': 'free', 'exponents': (2, 2)})

    def test_deletion_inverse_generic_line(self):
        report = verify_deletion_inverse(make_triple(FOUR_GENERIC, GENERIC))
        self.assertEqual(report.verdict, Verdict.HYPOTHESIS_NOT_MET)
        self.assertFalse(report.hypotheses['level_formula'])

    def test_deletion_inverse_conic_and_tangent(self):
        report = verify_deletion_inverse(make_triple(RATIONAL_CONIC, X))
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.computed, {'kind': 'free', 'exponents': (1, 1)})


class EquivalenceTests(SimpleTestCase):
    def test_two_lines(self):
        report = verify_equivalence(make_triple(XY, Z), 1)
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['sides'], 'both sides true')

    def test_pencil(self):
        report = verify_equivalence(make_triple(PENCIL, Z), 2)
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.computed['d3_plus_one'], 1)

    def test_neither_side_free(self):
        report = verify_equivalence(make_triple(FOUR_GENERIC, X_PLUS_Y), 1)
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['sides'], 'both sides false')

    def test_count_mismatch(self):
        report = verify_equivalence(make_triple(XY, Z), 3)
        self.assertEqual(report.verdict, Verdict.HYPOTHESIS_NOT_MET)


class FreeOrderingTests(SimpleTestCase):
    def test_orderings(self):
        self.assertEqual(free_ordering((0, 2), 3), (2, 0))
        self.assertEqual(free_ordering((1, 2), 2), (1, 2))
        self.assertIsNone(free_ordering((1, 1), 3))


class EpsilonTests(SimpleTestCase):
    def test_free_route(self):
        solution = solve_epsilon(delete_line(XYZ, Z))
        self.assertEqual((solution.eps, solution.route), (0, 'free'))

    def test_plus_one_route(self):
        solution = solve_epsilon(delete_line(FIVE_LINES, X_PLUS_Y))
        self.assertEqual((solution.eps, solution.route), (0, 'plus_one'))

    def test_every_near_pencil_component(self):
        for line in (X, LinearForm.of(0, 1, 0), Z, X_PLUS_Y):
            self.assertEqual(solve_epsilon(delete_line(NEAR_PENCIL, line)).eps, 0)

    def test_non_free_curve(self):
        with self.assertRaises(UnsupportedClassificationError):
            solve_epsilon(delete_line(FOUR_GENERIC, X))


class CharacterizationTests(SimpleTestCase):
    def test_deletion_mode(self):
        report = characterize_freeness(FIVE_LINES, Mode.DELETION, line=X_PLUS_Y)
        self.assertEqual(report.theorem, Theorem.DELETION_CHARACTERIZATION)
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['condition'], 'ii')
        self.assertEqual(report.predicted['exponents'], (2, 2))

    def test_deletion_mode_needs_a_line(self):
        with self.assertRaises(LineComponentError):
            characterize_freeness(parse_poly('x^2 + y^2 + z^2'), Mode.DELETION)

    def test_addition_mode_on_a_free_curve(self):
        report = characterize_freeness(XYZ, Mode.ADDITION, samples=6, seed=7)
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['certifying_lines'], report.trace['sampled_lines'])

    def test_addition_mode_on_four_lines(self):
        report = characterize_freeness(FOUR_GENERIC, Mode.ADDITION, samples=4, seed=7)
        self.assertEqual(report.verdict, Verdict.CONFIRMED)
        self.assertEqual(report.trace['certifying_lines'], 0)
        self.assertEqual(report.computed, {'violations': []})

    def test_unknown_mode(self):
        with self.assertRaises(ValueError):
            characterize_freeness(XYZ, 'sideways')


class ExactSequenceTests(SimpleTestCase):
    def test_triangle_minus_z_in_degree_one(self):
        report = check_exact_sequence(delete_line(XYZ, Z), bound=2)
        self.assertTrue(report.passed)
        check = report.checks[1]
        self.assertEqual((check.dim_d, check.dim_d_prime, check.kernel_dim), (3, 1, 1))

    def test_degree_zero_has_trivial_kernel(self):
        report = check_exact_sequence(make_triple(XYZ, GENERIC), bound=1)
        self.assertEqual(report.checks[0].kernel_dim, 0)
        self.assertTrue(report.passed)

    def test_tangency_on_four_lines(self):
        report = check_exact_sequence(delete_line(FOUR_GENERIC, LinearForm.of(1, 1, 1)), bound=4)
        self.assertTrue(all(c.tangent for c in report.checks))
        self.assertTrue(report.passed)

    def test_log_derivations_contain_euler(self):
        self.assertEqual(len(log_derivations(XYZ, 0)), 0)
        self.assertEqual(len(log_derivations(XYZ, 1)), 3)


class SingularPointTests(SimpleTestCase):
    def test_arrangement_nodes(self):
        points = singular_points(FOUR_GENERIC)
        self.assertFalse(points.rational_only)
        self.assertEqual(len(points.points), 6)

    def test_pencil_has_one_point(self):
        self.assertEqual(singular_points(PENCIL).points, ((0, 0, 1),))

    def test_smooth_conic(self):
        points = singular_points(parse_poly('x^2 + y^2 + z^2'))
        self.assertTrue(points.rational_only)
        self.assertEqual(points.points, ())

    def test_conic_and_tangent(self):
        self.assertEqual(singular_points(parse_poly('x*(y^2 - x*z)')).points, ((0, 0, 1),))

    def test_lines_through_nodes_of_four_lines(self):
        lines = lines_through_pairs(singular_points(FOUR_GENERIC).points)
        self.assertIn(X_PLUS_Y, lines)
        self.assertEqual(len(lines), 7)
