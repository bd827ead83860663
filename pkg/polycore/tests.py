from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st
from sympy import QQ

from polycore.exceptions import NonHomogeneousError, PolynomialParseError, ZeroCurveError
from polycore.matrices import RatMatrix, annihilator, contains, independent_subset, span_rank
from polycore.polys import (
    BinaryForm,
    HomoPoly,
    LinearForm,
    U,
    V,
    distinct_root_count,
    gradient,
    linear_components,
    monomials,
    parse_curve,
    parse_poly,
    partial,
    reduced_check,
    restrict_to_line,
    restriction_rows,
)


def binary(expr, degree):
    return BinaryForm.from_expr(expr, degree)


class ParsePolyTests(SimpleTestCase):
    def test_product_of_variables(self):
        f = parse_poly('x*y*z')
        self.assertEqual(f.degree, 3)
        self.assertEqual(f.coefficients, {(1, 1, 1): 1})

    def test_expands_products(self):
        f = parse_poly('x*y*z*(x+y+z)')
        self.assertEqual(f.degree, 4)
        self.assertEqual(set(f.coefficients), {(2, 1, 1), (1, 2, 1), (1, 1, 2)})

    def test_caret_and_rational_constants(self):
        f = parse_poly('x^2 + 1/2*y*z - 0.25*z^2')
        self.assertEqual(f.coefficients[(0, 1, 1)], QQ(1, 2))
        self.assertEqual(f.coefficients[(0, 0, 2)], QQ(-1, 4))

    def test_non_homogeneous_is_rejected(self):
        with self.assertRaises(NonHomogeneousError):
            parse_poly('x^2 + y*z + x')

    def test_syntax_error(self):
        with self.assertRaises(PolynomialParseError):
            parse_poly('x*(y+')

    def test_foreign_characters_are_rejected(self):
        for text in ('w*x', 'x; y', 'sin(x)', ''):
            with self.assertRaises(PolynomialParseError):
                parse_poly(text)

    def test_parse_curve_rejects_zero_and_constants(self):
        for text in ('0', 'x - x', '3'):
            with self.assertRaises(ZeroCurveError):
                parse_curve(text)


class PartialTests(SimpleTestCase):
    def test_product_rule(self):
        self.assertEqual(partial(parse_poly('x*y*z'), 'x'), parse_poly('y*z'))

    def test_absent_variable_gives_zero(self):
        d = partial(parse_poly('x*y'), 'z')
        self.assertTrue(d.is_zero)
        self.assertEqual(d.degree, 1)

    def test_power_rule(self):
        self.assertEqual(partial(parse_poly('x^2*y*z'), 'x'), parse_poly('2*x*y*z'))


class RestrictToLineTests(SimpleTestCase):
    def test_component_restricts_to_zero(self):
        self.assertTrue(restrict_to_line(parse_poly('x*y*z'), LinearForm.of(0, 0, 1)).is_zero)

    def test_coordinate_line(self):
        g = restrict_to_line(parse_poly('x*y*(x+y)'), LinearForm.of(0, 0, 1))
        self.assertEqual(g, binary(U * V * (U + V), 3))

    def test_diagonal_line(self):
        g = restrict_to_line(parse_poly('x*y*z'), LinearForm.parse('x - y'))
        self.assertEqual(g, binary(U ** 2 * V, 3))

    def test_restriction_rows_match_restriction(self):
        line = LinearForm.of(1, 2, 5)
        f = parse_poly('x^2 - 3*y*z + z^2')
        rows = restriction_rows(line, 2)
        combined = [sum(c * row[j] for c, row in zip(f.coefficient_vector(), rows)) for j in range(3)]
        self.assertEqual(combined, restrict_to_line(f, line).coefficient_vector())


class DistinctRootCountTests(SimpleTestCase):
    def test_three_lines(self):
        self.assertEqual(distinct_root_count(binary(U * V * (U + V), 3)), 3)

    def test_double_root(self):
        self.assertEqual(distinct_root_count(binary(U ** 2 * V, 3)), 2)

    def test_irreducible_quadratic(self):
        self.assertEqual(distinct_root_count(binary(U ** 2 + V ** 2, 2)), 2)

    def test_root_at_infinity_only(self):
        self.assertEqual(distinct_root_count(binary(V ** 3, 3)), 1)

    def test_zero_form(self):
        with self.assertRaises(ValueError):
            distinct_root_count(BinaryForm.zero(2))


class LinearFormTests(SimpleTestCase):
    def test_scaling_is_canonical(self):
        self.assertEqual(LinearForm.of(2, 4, -6), LinearForm.of(1, 2, -3))
        self.assertEqual(LinearForm.parse('0 3 3'), LinearForm.parse('y + z'))

    def test_zero_line(self):
        with self.assertRaises(ValueError):
            LinearForm.of(0, 0, 0)

    def test_quadratic_is_not_a_line(self):
        with self.assertRaises(PolynomialParseError):
            LinearForm.parse('x*y')

    def test_through_two_points(self):
        line = LinearForm.through((0, 0, 1), (1, -1, 0))
        self.assertEqual(line, LinearForm.of(1, 1, 0))

    def test_linear_components(self):
        f = parse_poly('x*(x+y)*(y^2 - x*z)')
        self.assertEqual(linear_components(f), [LinearForm.of(1, 0, 0), LinearForm.of(1, 1, 0)])

    def test_reduced_check(self):
        self.assertEqual(reduced_check(parse_poly('x*y*z')), 0)
        self.assertEqual(reduced_check(parse_poly('x^2*y')), 1)


class MatrixTests(SimpleTestCase):
    def test_identity(self):
        m = RatMatrix.identity(3)
        self.assertEqual(m.rank(), 3)
        self.assertEqual(m.nullspace(), [])

    def test_zero(self):
        m = RatMatrix.zeros(2, 4)
        self.assertEqual(m.rank(), 0)
        self.assertEqual(len(m.nullspace()), 4)

    def test_proportional_rows(self):
        m = RatMatrix.from_rows([[1, 2], [2, 4]])
        self.assertEqual(m.rank(), 1)
        self.assertEqual(m.nullspace(), [(QQ(-2), QQ(1))])

    def test_independent_subset_extends_start(self):
        chosen = independent_subset([(1, 0, 0), (0, 1, 0), (1, 1, 0)], 3, start=[(1, 0, 0)])
        self.assertEqual(chosen, [1])

    def test_annihilator_and_contains(self):
        functionals = annihilator([(1, 1, 0)], 3)
        self.assertEqual(len(functionals), 2)
        self.assertTrue(contains([(1, 0, 0), (0, 1, 0)], [(3, -2, 0)], 3))
        self.assertFalse(contains([(1, 0, 0)], [(0, 0, 1)], 3))


coefficients = st.integers(min_value=-5, max_value=5)


@st.composite
def forms(draw, degree=None):
    degree = draw(st.integers(min_value=1, max_value=4)) if degree is None else degree
    values = draw(st.lists(coefficients, min_size=len(monomials(degree)), max_size=len(monomials(degree))))
    return HomoPoly.from_vector(degree, values)


@st.composite
def lines(draw):
    triple = draw(st.tuples(coefficients, coefficients, coefficients).filter(any))
    return LinearForm.of(*triple)


class PolynomialPropertyTests(SimpleTestCase):
    @given(forms())
    @settings(max_examples=40, deadline=None)
    def test_euler_identity(self, f):
        xs = [HomoPoly.from_terms(1, {m: 1}) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        total = HomoPoly.zero(f.degree)
        for x, d in zip(xs, gradient(f)):
            total = total + x * d
        self.assertEqual(total, f * f.degree)

    @given(forms(), forms(), lines())
    @settings(max_examples=40, deadline=None)
    def test_restriction_is_multiplicative(self, f, g, line):
        product = restrict_to_line(f * g, line)
        separate = restrict_to_line(f, line) * restrict_to_line(g, line)
        self.assertEqual(product.poly, separate.poly)

    @given(st.lists(st.tuples(coefficients, coefficients).filter(any), min_size=1, max_size=5))
    @settings(max_examples=60, deadline=None)
    def test_root_count_is_number_of_distinct_factors(self, factors):
        product = 1
        for a, b in factors:
            product *= a * U + b * V
        distinct = {tuple(QQ(c, a if a else b) for c in (a, b)) for a, b in factors}
        self.assertEqual(distinct_root_count(binary(product, len(factors))), len(distinct))

    @given(st.lists(st.lists(coefficients, min_size=4, max_size=4), min_size=1, max_size=5))
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity(self, rows):
        m = RatMatrix.from_rows(rows, 4)
        kernel = m.nullspace()
        self.assertEqual(m.rank() + len(kernel), 4)
        self.assertEqual(span_rank(kernel, 4), len(kernel))
        for vector in kernel:
            for row in rows:
                self.assertEqual(sum(QQ(r) * v for r, v in zip(row, vector)), 0)

    @given(
        st.lists(coefficients, min_size=2, max_size=6).filter(any),
        st.tuples(coefficients, coefficients, coefficients, coefficients).filter(lambda m: m[0] * m[3] != m[1] * m[2]),
    )
    @settings(max_examples=60, deadline=None)
    def test_root_count_survives_a_change_of_line_coordinates(self, coeffs, change):
        degree = len(coeffs) - 1
        g = BinaryForm.from_vector(degree, coeffs)
        p, q, r, s = change
        moved = g.poly.as_expr().xreplace({U: p * U + q * V, V: r * U + s * V})
        self.assertEqual(distinct_root_count(binary(moved.expand(), degree)), distinct_root_count(g))

    @given(st.lists(st.lists(coefficients, min_size=5, max_size=5), min_size=1, max_size=4))
    @settings(max_examples=40, deadline=None)
    def test_kernel_coordinates_sit_in_the_free_columns(self, rows):
        m = RatMatrix.from_rows(rows, 5)
        free = m.free_columns()
        kernel = m.nullspace()
        self.assertEqual(len(free), len(kernel))
        for i, vector in enumerate(kernel):
            self.assertEqual([vector[j] for j in free], [QQ.one if i == n else QQ.zero for n in range(len(free))])
