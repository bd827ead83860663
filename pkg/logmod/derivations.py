"""Derivations a*dx + b*dy + c*dz with homogeneous coefficients."""
from dataclasses import dataclass

from sympy import QQ

from polycore.polys import HomoPoly, gradient, monomial_count, monomial_index, monomials


@dataclass(frozen=True)
class Derivation:
    degree: int
    a: HomoPoly
    b: HomoPoly
    c: HomoPoly

    def __post_init__(self):
        if any(p.degree != self.degree for p in self.coeffs):
            raise ValueError(f'all coefficients of a degree-{self.degree} derivation must have that degree')

    @classmethod
    def of(cls, a, b, c):
        return cls(a.degree, a, b, c)

    @classmethod
    def from_vector(cls, degree, vector):
        size = monomial_count(degree)
        return cls(degree, *(
            HomoPoly.from_vector(degree, vector[n * size:(n + 1) * size]) for n in range(3)
        ))

    @property
    def coeffs(self):
        return (self.a, self.b, self.c)

    @property
    def is_zero(self):
        return all(p.is_zero for p in self.coeffs)

    def vector(self):
        return tuple(v for p in self.coeffs for v in p.coefficient_vector())

    def apply(self, g):
        """theta(g) = a*g_x + b*g_y + c*g_z."""
        if g.degree == 0:
            return HomoPoly.zero(self.degree)
        terms = [p * d for p, d in zip(self.coeffs, gradient(g))]
        return terms[0] + terms[1] + terms[2]

    def __mul__(self, other):
        if isinstance(other, HomoPoly):
            return Derivation(self.degree + other.degree, *(p * other for p in self.coeffs))
        return Derivation(self.degree, *(p * other for p in self.coeffs))

    __rmul__ = __mul__

    def __add__(self, other):
        return Derivation(self.degree, *(p + q for p, q in zip(self.coeffs, other.coeffs)))

    def __str__(self):
        parts = [f'({p})*d{v}' for p, v in zip(self.coeffs, 'xyz') if not p.is_zero]
        return ' + '.join(parts) if parts else '0'


def euler():
    """theta_E = x*dx + y*dy + z*dz."""
    return Derivation(1, *(HomoPoly.from_terms(1, {m: 1}) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1))))


def triple_dimension(k):
    return 3 * monomial_count(k)


def times_monomial(vector, k, monomial):
    """Multiply a degree-k coefficient-triple vector by x^i*y^j*z^l."""
    shift = sum(monomial)
    source, target = monomials(k), monomial_index(k + shift)
    size_in, size_out = monomial_count(k), monomial_count(k + shift)
    out = [QQ.zero] * (3 * size_out)
    for block in range(3):
        for n, m in enumerate(source):
            value = vector[block * size_in + n]
            if value:
                shifted = (m[0] + monomial[0], m[1] + monomial[1], m[2] + monomial[2])
                out[block * size_out + target[shifted]] = value
    return tuple(out)


VARIABLE_MONOMIALS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
