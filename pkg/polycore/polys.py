"""Homogeneous polynomials in x, y, z and binary forms on a line, over QQ."""
import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import Float, Integer, Poly, QQ, Rational, Symbol, gcd, symbols
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    rationalize,
    standard_transformations,
)
from sympy.polys.polyerrors import CoercionFailed, GeneratorsError, PolynomialError
from tokenize import TokenError

from .exceptions import NonHomogeneousError, PolynomialParseError, ZeroCurveError

logger = logging.getLogger(__name__)

X, Y, Z = symbols('x y z')
U, V = symbols('u v')
GENS = (X, Y, Z)
LINE_GENS = (U, V)
VARIABLES = ('x', 'y', 'z')


@lru_cache(maxsize=None)
def monomials(k):
    """Exponent triples of degree k, x-heaviest first."""
    if k < 0:
        return ()
    return tuple(
        (i, j, k - i - j)
        for i in range(k, -1, -1)
        for j in range(k - i, -1, -1)
    )


@lru_cache(maxsize=None)
def monomial_index(k):
    return {m: n for n, m in enumerate(monomials(k))}


def monomial_count(k):
    return (k + 1) * (k + 2) // 2 if k >= 0 else 0


@lru_cache(maxsize=None)
def binary_monomials(k):
    if k < 0:
        return ()
    return tuple((i, k - i) for i in range(k, -1, -1))


def to_rat(value):
    """Coerce ints, strings like '3/4', Fractions or sympy numbers to QQ."""
    if isinstance(value, (str, Fraction)):
        value = Rational(str(value).strip())
    return QQ.convert(value)


def normalize_projective(coords):
    """Scale a nonzero vector so its first nonzero entry is 1."""
    coords = tuple(to_rat(c) for c in coords)
    lead = next((c for c in coords if c), None)
    if lead is None:
        raise ValueError('the zero vector is not a projective point')
    return tuple(c / lead for c in coords)


@dataclass(frozen=True)
class HomoPoly:
    degree: int
    poly: Poly

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f'negative degree {self.degree}')
        if self.poly.gens != GENS:
            raise ValueError('HomoPoly must be a polynomial in x, y, z')
        for monom in self.poly.monoms():
            if not self.poly.is_zero and sum(monom) != self.degree:
                raise NonHomogeneousError(
                    f'monomial {monom} does not have degree {self.degree}'
                )

    @classmethod
    def zero(cls, degree):
        return cls(degree, Poly(0, *GENS, domain=QQ))

    @classmethod
    def from_expr(cls, expr, degree=None):
        poly = Poly(expr, *GENS, domain=QQ)
        if degree is None:
            if poly.is_zero:
                raise ValueError('the degree of a zero polynomial must be given')
            degree = poly.total_degree()
        return cls(degree, poly)

    @classmethod
    def from_terms(cls, degree, terms):
        terms = {m: to_rat(c) for m, c in terms.items() if c}
        return cls(degree, Poly.from_dict(terms, *GENS, domain=QQ) if terms
                   else Poly(0, *GENS, domain=QQ))

    @classmethod
    def from_vector(cls, degree, vector):
        return cls.from_terms(degree, dict(zip(monomials(degree), vector)))

    @property
    def is_zero(self):
        return self.poly.is_zero

    @property
    def coefficients(self):
        """Map exponent triple -> nonzero QQ coefficient."""
        if self.poly.is_zero:
            return {}
        return dict(self.poly.as_dict(native=True))

    def coefficient_vector(self):
        coeffs = self.coefficients
        return [coeffs.get(m, QQ.zero) for m in monomials(self.degree)]

    def as_expr(self):
        return self.poly.as_expr()

    def __add__(self, other):
        if self.degree != other.degree:
            raise ValueError(f'cannot add degrees {self.degree} and {other.degree}')
        return HomoPoly(self.degree, self.poly + other.poly)

    def __sub__(self, other):
        if self.degree != other.degree:
            raise ValueError(f'cannot subtract degrees {self.degree} and {other.degree}')
        return HomoPoly(self.degree, self.poly - other.poly)

    def __neg__(self):
        return HomoPoly(self.degree, -self.poly)

    def __mul__(self, other):
        if isinstance(other, HomoPoly):
            return HomoPoly(self.degree + other.degree, self.poly * other.poly)
        return HomoPoly(self.degree, self.poly * to_rat(other))

    __rmul__ = __mul__

    def exquo(self, other):
        """Exact division; raises if other does not divide self."""
        quotient = self.poly.exquo(other.poly)
        return HomoPoly(self.degree - other.degree, quotient)

    def divides(self, other):
        """True when self divides other."""
        return other.poly.rem(self.poly).is_zero

    def __str__(self):
        return str(self.as_expr())


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    poly: Poly

    @classmethod
    def zero(cls, degree):
        return cls(degree, Poly(0, *LINE_GENS, domain=QQ))

    @classmethod
    def from_expr(cls, expr, degree):
        return cls(degree, Poly(expr, *LINE_GENS, domain=QQ))

    @classmethod
    def from_vector(cls, degree, vector):
        terms = {m: to_rat(c) for m, c in zip(binary_monomials(degree), vector) if c}
        if not terms:
            return cls.zero(degree)
        return cls(degree, Poly.from_dict(terms, *LINE_GENS, domain=QQ))

    @property
    def is_zero(self):
        return self.poly.is_zero

    def coefficient_vector(self):
        coeffs = {} if self.poly.is_zero else dict(self.poly.as_dict(native=True))
        return [coeffs.get(m, QQ.zero) for m in binary_monomials(self.degree)]

    def diff(self, var):
        return BinaryForm(max(self.degree - 1, 0), self.poly.diff(var))

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm(self.degree + other.degree, self.poly * other.poly)
        return BinaryForm(self.degree, self.poly * to_rat(other))

    def __add__(self, other):
        return BinaryForm(self.degree, self.poly + other.poly)

    def __str__(self):
        return str(self.poly.as_expr())


@dataclass(frozen=True)
class LinearForm:
    """The line a*x + b*y + c*z = 0, scaled so its first nonzero coefficient is 1."""
    a: object
    b: object
    c: object

    def __post_init__(self):
        coeffs = self.coefficients
        if not any(coeffs):
            raise ValueError('(0, 0, 0) does not define a line')
        if next(c for c in coeffs if c) != 1:
            raise ValueError(f'{coeffs} is not in canonical scaling; use LinearForm.of')

    @classmethod
    def of(cls, a, b, c):
        return cls(*normalize_projective((a, b, c)))

    @classmethod
    def through(cls, p, q):
        """The line joining two distinct projective points."""
        (p0, p1, p2), (q0, q1, q2) = p, q
        return cls.of(p1 * q2 - p2 * q1, p2 * q0 - p0 * q2, p0 * q1 - p1 * q0)

    @classmethod
    def parse(cls, text):
        """Accept 'a b c', 'a,b,c' or a linear expression such as 'x+2*y'."""
        parts = [p for p in re.split(r'[\s,;]+', text.strip()) if p]
        if len(parts) == 3 and all(re.fullmatch(r'[-+]?\d+(/\d+)?', p) for p in parts):
            return cls.of(*(to_rat(p) for p in parts))
        form = parse_poly(text)
        if form.degree != 1 or form.is_zero:
            raise PolynomialParseError(f'{text!r} is not a linear form')
        coeffs = form.coefficients
        return cls.of(*(coeffs.get(m, QQ.zero) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))

    @property
    def coefficients(self):
        return (self.a, self.b, self.c)

    @property
    def pivot(self):
        """Index of the variable the line is solved for."""
        return next(n for n, c in enumerate(self.coefficients) if c)

    @property
    def free_indices(self):
        """Indices of the two variables that become the line coordinates (u, v)."""
        return tuple(n for n in range(3) if n != self.pivot)

    def as_poly(self):
        return HomoPoly.from_terms(1, dict(zip(((1, 0, 0), (0, 1, 0), (0, 0, 1)), self.coefficients)))

    def substitution(self):
        """x_p -> -(c_q*u + c_r*v), x_q -> u, x_r -> v."""
        p = self.pivot
        q, r = self.free_indices
        coeffs = self.coefficients
        return {
            GENS[p]: -(QQ.to_sympy(coeffs[q]) * U + QQ.to_sympy(coeffs[r]) * V),
            GENS[q]: U,
            GENS[r]: V,
        }

    def contains(self, point):
        return sum(c * p for c, p in zip(self.coefficients, point)) == 0

    def as_triple(self):
        return tuple(str(QQ.to_sympy(c)) for c in self.coefficients)

    def __str__(self):
        return str(self.as_poly())


_ALLOWED = re.compile(r'[\sxyz0-9+\-*/^().]*')
_TRANSFORMATIONS = standard_transformations + (convert_xor, rationalize)
_GLOBALS = {'Integer': Integer, 'Rational': Rational, 'Float': Float, 'Symbol': Symbol}


def parse_poly(text):
    """Parse an arithmetic expression in x, y, z into its expanded HomoPoly.

    Only digits, the three variables, + - * / ^ and parentheses are accepted;
    decimal constants are turned into exact rationals.
    """
    if not _ALLOWED.fullmatch(text or ''):
        raise PolynomialParseError(f'unexpected characters in {text!r}')
    if not text.strip():
        raise PolynomialParseError('empty expression')
    try:
        expr = parse_expr(
            text,
            local_dict={'x': X, 'y': Y, 'z': Z},
            global_dict=dict(_GLOBALS),
            transformations=_TRANSFORMATIONS,
        )
        poly = Poly(expr, *GENS, domain=QQ)
    except (SyntaxError, TokenError, TypeError) as exc:
        raise PolynomialParseError(f'cannot parse {text!r}: {exc}') from exc
    except (PolynomialError, CoercionFailed, GeneratorsError, ZeroDivisionError) as exc:
        raise PolynomialParseError(f'{text!r} is not a polynomial in x, y, z') from exc

    if poly.is_zero:
        return HomoPoly.zero(0)
    degrees = sorted({sum(m) for m in poly.monoms()})
    if len(degrees) > 1:
        raise NonHomogeneousError(
            f'{text!r} is not homogeneous: it has terms of degrees {degrees}'
        )
    return HomoPoly(degrees[0], poly)


def parse_curve(text):
    """parse_poly for a curve equation: rejects zero and constant polynomials."""
    f = parse_poly(text)
    if f.is_zero or f.degree == 0:
        raise ZeroCurveError(f'{text!r} does not define a curve')
    return f


def partial(f, var):
    """Formal partial derivative with respect to 'x', 'y', 'z' or an index 0-2."""
    if f.degree < 1:
        raise ValueError('cannot differentiate a degree-0 form as a curve partial')
    index = VARIABLES.index(var) if isinstance(var, str) else var
    return HomoPoly(f.degree - 1, f.poly.diff(GENS[index]))


def gradient(f):
    return tuple(partial(f, n) for n in range(3))


def restrict_to_line(f, line):
    """f|_L as a binary form in the line coordinates (u, v); zero iff L divides f."""
    if f.is_zero:
        return BinaryForm.zero(f.degree)
    expr = f.as_expr().xreplace(line.substitution())
    return BinaryForm.from_expr(expr.expand(), f.degree)


@lru_cache(maxsize=512)
def restriction_rows(line, k):
    """Coefficient vectors of m|_L for every degree-k monomial m, in monomials(k) order."""
    return tuple(
        tuple(restrict_to_line(HomoPoly.from_terms(k, {m: 1}), line).coefficient_vector())
        for m in monomials(k)
    )


def distinct_root_count(g):
    """Number of distinct points of P^1 where the binary form g vanishes."""
    if g.is_zero:
        raise ValueError('the zero form vanishes everywhere')
    affine = Poly(g.poly.as_expr().xreplace({V: 1}), U, domain=QQ)
    at_infinity = 1 if affine.degree() < g.degree else 0
    if affine.degree() <= 0:
        return at_infinity
    repeated = gcd(affine, affine.diff(U)).degree()
    return affine.degree() - repeated + at_infinity


def squarefree_part(g):
    """Squarefree part of a nonzero binary form, as a binary form."""
    part = g.poly.sqf_part()
    return BinaryForm(part.total_degree(), part)


def reduced_check(f):
    """Degree of gcd(f, f_x, f_y, f_z); 0 exactly when f is squarefree."""
    common = f.poly
    for d in gradient(f):
        common = common.gcd(d.poly)
    return 0 if common.is_ground else common.total_degree()


def linear_components(f):
    """Linear factors of f over QQ, each checked by restriction vanishing."""
    _, factors = f.poly.factor_list()
    lines = []
    for factor, _ in factors:
        if factor.total_degree() != 1:
            continue
        coeffs = factor.as_dict(native=True)
        line = LinearForm.of(*(coeffs.get(m, QQ.zero) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))
        if not restrict_to_line(f, line).is_zero:
            logger.error(f'factor {factor.as_expr()} does not vanish on its own line')
            continue
        lines.append(line)
    return sorted(lines, key=lambda l: tuple(QQ.to_sympy(c) for c in l.coefficients))
