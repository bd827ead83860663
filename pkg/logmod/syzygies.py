"""Graded pieces of D_0(C) = AR(f), the syzygies of the Jacobian partials.

Every computation is degreewise: the degree-k piece of a module is a subspace
of the space of coefficient triples of degree k, and all module operations
reduce to exact row reduction over QQ.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import QQ

from polycore.exceptions import InternalInconsistencyError, InvalidParameterError, NonReducedError
from polycore.matrices import RatMatrix, independent_subset, span_rank
from polycore.polys import (
    HomoPoly,
    gradient,
    monomial_count,
    monomial_index,
    monomials,
    reduced_check,
)

from .derivations import VARIABLE_MONOMIALS, Derivation, times_monomial

logger = logging.getLogger(__name__)


@lru_cache(maxsize=128)
def require_reduced(f):
    """Raise NonReducedError unless f is squarefree."""
    square = reduced_check(f)
    if square:
        raise NonReducedError(
            f'{f} is not reduced: it shares a factor of degree {square} with its partials',
            square,
        )
    return f


def syzygy_matrix(f, k):
    """Matrix of (a, b, c) -> a*f_x + b*f_y + c*f_z on degree-k triples."""
    n = f.degree
    size = monomial_count(k)
    target = monomial_index(k + n - 1)
    entries = {}
    for block, partial in enumerate(gradient(f)):
        for col, m in enumerate(monomials(k)):
            for monom, coeff in partial.coefficients.items():
                row = target[(m[0] + monom[0], m[1] + monom[1], m[2] + monom[2])]
                entries.setdefault(row, {})[block * size + col] = coeff
    return RatMatrix.from_sparse(entries, (monomial_count(k + n - 1), 3 * size))


@lru_cache(maxsize=1024)
def _syzygy_kernel(f, k):
    matrix = syzygy_matrix(f, k)
    basis = tuple(matrix.nullspace())
    logger.debug(f'dim AR({f})_{k} = {len(basis)}')
    return basis, matrix.free_columns()


def syzygy_vectors(f, k):
    """Basis of AR(f)_k as coefficient-triple vectors, in kernel (RREF) order."""
    if k < 0:
        return ()
    require_reduced(f)
    return _syzygy_kernel(f, k)[0]


def ar_coordinates(f, k, vectors):
    """Coordinates of elements of AR(f)_k in the basis syzygy_vectors(f, k).

    Kernel vector i is 1 in the i-th free column and 0 in the other free
    columns, so the free entries of a syzygy are its coordinates.
    """
    if k < 0:
        return [() for _ in vectors]
    free = _syzygy_kernel(f, k)[1]
    return [tuple(v[j] for j in free) for v in vectors]


def syzygy_space(f, k):
    """Basis of AR(f)_k as derivations."""
    return [Derivation.from_vector(k, v) for v in syzygy_vectors(f, k)]


def mdr(f):
    """Minimal degree of a nonzero element of D_0(C)."""
    require_reduced(f)
    for k in range(f.degree):
        if syzygy_vectors(f, k):
            return k
    raise InternalInconsistencyError(
        f'AR({f}) has no element of degree <= {f.degree - 1}, '
        'but the Koszul syzygies live there'
    )


@dataclass(frozen=True)
class JacobianData:
    f: HomoPoly
    partials: tuple
    dims: dict = field(hash=False, compare=False)

    def dim_ar(self, k):
        """3*dim S_k - dim J_{k+n-1}."""
        return 3 * monomial_count(k) - self.dims.get(k + self.f.degree - 1, 0)


def jacobian_data(f, top):
    """dim J_m for every m <= top, from the spans of monomial multiples of the partials."""
    partials = gradient(f)
    dims = {}
    for m in range(f.degree - 1, top + 1):
        shift = m - f.degree + 1
        index = monomial_index(m)
        vectors = []
        for partial in partials:
            for mono in monomials(shift):
                vector = [0] * monomial_count(m)
                for monom, coeff in partial.coefficients.items():
                    vector[index[(monom[0] + mono[0], monom[1] + mono[1], monom[2] + mono[2])]] = coeff
                vectors.append(vector)
        dims[m] = span_rank(vectors, monomial_count(m))
    return JacobianData(f, partials, dims)


@dataclass(frozen=True)
class GradedSyzygySlice:
    f: HomoPoly
    bound: int
    slices: dict = field(hash=False, compare=False)

    @property
    def curve_degree(self):
        return self.f.degree

    def dimension(self, k):
        return len(self.slices.get(k, ()))

    def derivations(self, k):
        return [Derivation.from_vector(k, v) for v in self.slices.get(k, ())]


def graded_slice(f, bound):
    return GradedSyzygySlice(f, bound, {k: syzygy_vectors(f, k) for k in range(bound + 1)})


def generators_in_degree(f, k, generators):
    """New minimal generators of AR(f) in degree k.

    `generators` holds the (degree, Derivation) pairs found below k; their
    monomial multiples span S_1*AR_{k-1}. The kernel-basis vectors of AR_k
    extending that span are taken greedily in basis order.
    """
    basis = syzygy_vectors(f, k)
    if not basis:
        return []
    multiples = [
        times_monomial(g.vector(), d, m)
        for d, g in generators if d < k
        for m in monomials(k - d)
    ]
    units = [tuple(QQ.one if i == j else QQ.zero for j in range(len(basis))) for i in range(len(basis))]
    chosen = independent_subset(units, len(basis), start=ar_coordinates(f, k, multiples))
    if chosen:
        logger.debug(f'{len(chosen)} new generator(s) of AR({f}) in degree {k}')
    return [(k, Derivation.from_vector(k, basis[n])) for n in chosen]


@lru_cache(maxsize=256)
def minimal_generators(f, bound):
    """Minimal homogeneous generators of AR(f) in degrees <= bound."""
    if bound < f.degree:
        raise InvalidParameterError(f'bound {bound} is below the curve degree {f.degree}')
    generators = []
    for k in range(bound + 1):
        generators.extend(generators_in_degree(f, k, generators))
    return tuple(generators)


@dataclass(frozen=True)
class Relation:
    degree: int
    coefficients: tuple

    @property
    def coefficient_degrees(self):
        return tuple(None if c is None else c.degree for c in self.coefficients)


def _shift_relation(vector, degrees, k, var_monomial):
    """Multiply a degree-k relation vector by a variable, giving degree k+1 layout."""
    out = []
    position = 0
    for d in degrees:
        size = monomial_count(k - d)
        block = vector[position:position + size]
        position += size
        grown = [0] * monomial_count(k + 1 - d)
        index = monomial_index(k + 1 - d)
        for coeff, m in zip(block, monomials(k - d)):
            if coeff:
                grown[index[(m[0] + var_monomial[0], m[1] + var_monomial[1], m[2] + var_monomial[2])]] = coeff
        out.extend(grown)
    return tuple(out)


def relation_degrees(f, generators, bound):
    """Minimal relations among `generators`, degreewise up to `bound`.

    The degree-k relations are the kernel of the evaluation map
    (+)_i S_{k-deg g_i} -> AR(f)_k, written in AR coordinates; minimal ones
    are those not in S_1*(relations of degree k-1).
    """
    for _, g in generators:
        if not g.apply(f).is_zero:
            raise ValueError(f'{g} does not annihilate {f}')
    degrees = [d for d, _ in generators]
    vectors = [g.vector() for _, g in generators]
    relations = []
    previous = []
    for k in range(bound + 1):
        columns = [
            times_monomial(g, d, m)
            for d, g in zip(degrees, vectors)
            for m in monomials(k - d)
        ]
        expected = len(syzygy_vectors(f, k))
        if not columns:
            if expected:
                raise InternalInconsistencyError(
                    f'no generator reaches degree {k}, but dim AR({f})_{k} = {expected}'
                )
            previous = []
            continue
        evaluation = RatMatrix.from_rows(ar_coordinates(f, k, columns), expected).transpose()
        spanned = evaluation.rank()
        if spanned != expected:
            raise InternalInconsistencyError(
                f'generators span {spanned} of the {expected} dimensions of AR({f})_{k}'
            )
        kernel = evaluation.nullspace()
        products = [
            _shift_relation(r, degrees, k - 1, var)
            for r in previous
            for var in VARIABLE_MONOMIALS
        ]
        for n in independent_subset(kernel, len(columns), start=products):
            relations.append(Relation(k, _relation_coefficients(kernel[n], degrees, k)))
        previous = kernel
    return relations


def _relation_coefficients(vector, degrees, k):
    coefficients = []
    position = 0
    for d in degrees:
        if k - d < 0:
            coefficients.append(None)
            continue
        size = monomial_count(k - d)
        coefficients.append(HomoPoly.from_vector(k - d, vector[position:position + size]))
        position += size
    return tuple(coefficients)
