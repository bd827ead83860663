"""Free / plus-one generated / other, and Saito's determinant criterion."""
import logging
from dataclasses import dataclass
from functools import lru_cache, reduce

from django.conf import settings
from django.db import models
from sympy import Matrix, Poly, QQ, div

from polycore.exceptions import InternalInconsistencyError, InvalidParameterError
from polycore.polys import GENS, LinearForm, monomial_count, restrict_to_line

from .derivations import VARIABLE_MONOMIALS, euler
from .syzygies import (
    generators_in_degree,
    minimal_generators,
    mdr,
    relation_degrees,
    require_reduced,
    syzygy_vectors,
)

logger = logging.getLogger(__name__)


class CurveKind(models.TextChoices):
    FREE = 'free', 'Free'
    PLUS_ONE = 'plus_one_generated', 'Plus-one generated'
    OTHER = 'other', 'Other'


@dataclass(frozen=True)
class Free:
    d2: int
    d3: int
    basis: tuple
    saito_constant: object
    kind = CurveKind.FREE

    @property
    def exponents(self):
        return (self.d2, self.d3)

    def summary(self):
        return {
            'kind': self.kind.value,
            'exponents': tuple(sorted(self.exponents)),
            'mdr': self.mdr,
            'generator_degrees': (self.d2, self.d3),
            'saito_constant': self.saito_constant,
        }

    @property
    def mdr(self):
        return min(self.d2, self.d3)

    def hilbert_dimension(self, k):
        return monomial_count(k - self.d2) + monomial_count(k - self.d3)


@dataclass(frozen=True)
class PlusOneGenerated:
    d2: int
    d3: int
    level: int
    nu: int
    generators: tuple
    relation: object
    alpha: object
    certified: bool = True
    kind = CurveKind.PLUS_ONE

    @property
    def exponents(self):
        return (self.d2, self.d3)

    @property
    def mdr(self):
        return min(self.d2, self.d3)

    @property
    def nearly_free(self):
        return self.nu == 1

    def hilbert_dimension(self, k):
        return predicted_plus_one_dimension(k, self.d2, self.d3, self.level)

    def summary(self):
        return {
            'kind': self.kind.value,
            'exponents': tuple(sorted(self.exponents)),
            'level': self.level,
            'nu': self.nu,
            'nearly_free': self.nearly_free,
            'mdr': self.mdr,
            'generator_degrees': (self.d2, self.d3, self.level),
            'relation_degree': self.level + 1,
        }


@dataclass(frozen=True)
class Other:
    mdr: int
    generator_degrees: tuple
    bound: int
    bound_limited: bool
    kind = CurveKind.OTHER

    @property
    def exponents(self):
        return None

    def summary(self):
        return {
            'kind': self.kind.value,
            'mdr': self.mdr,
            'generator_degrees': self.generator_degrees,
            'bound': self.bound,
            'bound_limited': self.bound_limited,
        }


def default_bound(f):
    return settings.CURVAS['BOUND_FACTOR'] * f.degree


@dataclass(frozen=True)
class SaitoResult:
    passed: bool
    constant: object
    reason: str = ''


def saito_check(f, theta2, theta3):
    """det [theta_E; theta2; theta3] evaluated on (x, y, z) must be c*f, c != 0."""
    for theta in (theta2, theta3):
        if not theta.apply(f).is_zero:
            raise ValueError(f'{theta} does not annihilate {f}')
    if theta2.degree + theta3.degree != f.degree - 1:
        return SaitoResult(
            False, None,
            f'degree sum {theta2.degree + theta3.degree} differs from deg f - 1 = {f.degree - 1}',
        )
    rows = [[p.as_expr() for p in theta.coeffs] for theta in (euler(), theta2, theta3)]
    det = Poly(Matrix(rows).det(method='berkowitz').expand(), *GENS, domain=QQ)
    if det.is_zero:
        return SaitoResult(False, QQ.zero, 'the determinant vanishes')
    quotient, remainder = div(det, f.poly)
    if not remainder.is_zero or not quotient.is_ground:
        return SaitoResult(False, None, f'determinant {det.as_expr()} is not a multiple of f')
    return SaitoResult(True, quotient.LC())


def predicted_plus_one_dimension(k, d2, d3, level):
    """dim AR_k for the resolution 0 -> S(-d-1) -> S(-d2)+S(-d3)+S(-d) -> AR -> 0."""
    return (monomial_count(k - d2) + monomial_count(k - d3)
            + monomial_count(k - level) - monomial_count(k - level - 1))


def relation_vanishes_nowhere(coefficients):
    """True when the relation coefficients have no common zero in P^2.

    The last coefficient is the linear form alpha; the other two are restricted
    to the line alpha = 0, where they must be coprime.
    """
    *others, alpha = coefficients
    terms = alpha.coefficients
    line = LinearForm.of(*(terms.get(m, QQ.zero) for m in VARIABLE_MONOMIALS))
    common = reduce(lambda acc, g: acc.gcd(g), (restrict_to_line(c, line).poly for c in others))
    return not common.is_zero and common.is_ground


def classify(f, bound=None, exhaustive=False):
    """Free, plus-one generated or other.

    Generators are found degree by degree and the scan stops once they prove
    the answer: Saito's criterion for two generators, or a single relation
    vanishing nowhere for three. Curves that are neither, and every curve when
    `exhaustive` is set, are compared against the whole window up to `bound`.
    """
    require_reduced(f)
    bound = default_bound(f) if bound is None else bound
    if bound < f.degree:
        raise InvalidParameterError(f'bound {bound} is below the curve degree {f.degree}')
    return _classify(f, bound, exhaustive)


@lru_cache(maxsize=512)
def _classify(f, bound, exhaustive):
    if not exhaustive:
        found = _certified(f)
        if found is not None:
            return found
    return _classify_window(f, bound)


def _certified(f):
    n = f.degree
    generators = []
    for k in range(n + 1):
        new = generators_in_degree(f, k, generators)
        generators.extend(new)
        if len(generators) > 3:
            return None
        degrees = [d for d, _ in generators]
        if new and len(generators) == 2 and sum(degrees) == n - 1:
            (d2, theta2), (d3, theta3) = generators
            check = saito_check(f, theta2, theta3)
            if check.passed:
                return Free(d2, d3, (theta2, theta3), check.constant)
            logger.debug(f'{f}: two generators of degrees {degrees} fail Saito: {check.reason}')
        if len(generators) == 3 and degrees[0] + degrees[1] == n and k == degrees[2] + 1:
            return _plus_one(f, tuple(generators), k, certify=True)
    return None


def _classify_window(f, bound):
    n = f.degree
    generators = minimal_generators(f, bound)
    degrees = tuple(d for d, _ in generators)

    if len(generators) == 2 and sum(degrees) == n - 1:
        (d2, theta2), (d3, theta3) = generators
        check = saito_check(f, theta2, theta3)
        if check.passed:
            return Free(d2, d3, (theta2, theta3), check.constant)
        logger.warning(f'{f}: two generators of degrees {degrees} fail Saito: {check.reason}')

    if len(generators) == 3 and degrees[0] + degrees[1] == n:
        found = _plus_one(f, generators, bound)
        if found is not None:
            return found

    bound_limited = bool(degrees) and degrees[-1] >= bound - 1
    if bound_limited:
        logger.warning(
            f'{f}: generator pattern {degrees} reaches the bound {bound}; '
            'raise --bound to settle the classification'
        )
    return Other(mdr(f), degrees, bound, bound_limited)


def _plus_one(f, generators, top, certify=False):
    """PlusOneGenerated from three generators, checked on degrees <= top.

    With `certify` the relation must also vanish nowhere, which extends the
    Hilbert function match to every degree; otherwise a failing certificate
    only marks the result as uncertified.
    """
    n = f.degree
    d2, d3, level = (d for d, _ in generators)
    relations = relation_degrees(f, generators, top)
    if len(relations) != 1 or relations[0].degree != level + 1:
        logger.debug(f'{f}: relation degrees {[r.degree for r in relations]} rule out plus-one')
        return None
    relation = relations[0]
    psi = next(
        (index for index in (2, 1) if generators[index][0] == level
         and relation.coefficients[index] is not None and not relation.coefficients[index].is_zero),
        None,
    )
    if psi is None:
        return None
    for k in range(top + 1):
        if len(syzygy_vectors(f, k)) != predicted_plus_one_dimension(k, d2, d3, level):
            logger.debug(f'{f}: Hilbert function breaks the plus-one pattern in degree {k}')
            return None
    if not d3 <= level <= n - 1:
        raise InternalInconsistencyError(
            f'{f}: plus-one pattern with level {level} outside [{d3}, {n - 1}]'
        )
    ordered = [g for m, (_, g) in enumerate(generators) if m != psi] + [generators[psi][1]]
    coefficients = [c for m, c in enumerate(relation.coefficients) if m != psi] + [relation.coefficients[psi]]
    certified = relation_vanishes_nowhere(coefficients)
    if certify and not certified:
        logger.debug(f'{f}: the relation among the generators has a common zero')
        return None
    return PlusOneGenerated(
        d2=d2,
        d3=d3,
        level=level,
        nu=level - d3 + 1,
        generators=tuple(ordered),
        relation=tuple(coefficients),
        alpha=coefficients[-1],
        certified=certified,
    )
