"""Restriction of derivations to a line and splitting types of E_C.

Line coordinates follow LinearForm.substitution: for L solved for x_p, the
line coordinates are u = x_q, v = x_r and the normal coordinate is w = alpha_L.
A derivation theta has components theta(u), theta(v), theta(w) in these
coordinates.

Sections of E_C|_L are modelled inside S'^3, S' = QQ[u, v]: reducing D_0(C)
modulo alpha_L is injective on D_0(C)/alpha_L*D_0(C), and the sections are the
saturation of that image, recovered degree by degree from the top.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache, reduce

from django.conf import settings

from chern.bundles import SplittingType, chern_of_classification
from logmod.classification import CurveKind
from logmod.derivations import Derivation
from logmod.syzygies import syzygy_vectors
from polycore.exceptions import InternalInconsistencyError, UnsupportedClassificationError
from polycore.matrices import RatMatrix, annihilator, contains, independent_subset
from polycore.polys import LINE_GENS, BinaryForm, monomial_count, restrict_to_line, restriction_rows

from .sampling import random_lines

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RestrictedDerivation:
    degree: int
    du: BinaryForm
    dv: BinaryForm

    @classmethod
    def from_vector(cls, degree, vector):
        width = degree + 1
        return cls(degree, BinaryForm.from_vector(degree, vector[:width]),
                   BinaryForm.from_vector(degree, vector[width:2 * width]))

    @property
    def is_zero(self):
        return self.du.is_zero and self.dv.is_zero

    def apply(self, g):
        """du*g_u + dv*g_v."""
        u, v = LINE_GENS
        return BinaryForm(
            self.degree + g.degree - 1,
            self.du.poly * g.poly.diff(u) + self.dv.poly * g.poly.diff(v),
        )

    def vector(self):
        return tuple(self.du.coefficient_vector() + self.dv.coefficient_vector())


def line_components(theta, line):
    """theta(u), theta(v), theta(alpha_L) as forms in x, y, z."""
    q, r = line.free_indices
    normal = reduce(
        lambda acc, term: acc + term,
        (c * p for c, p in zip(line.coefficients, theta.coeffs)),
    )
    return theta.coeffs[q], theta.coeffs[r], normal


def rho(theta, line):
    """Restriction to L of the tangential part of theta."""
    tu, tv, _ = line_components(theta, line)
    return RestrictedDerivation(theta.degree, restrict_to_line(tu, line), restrict_to_line(tv, line))


def pi_line(theta, line):
    """rho(theta) together with the normal component theta(alpha_L)|_L."""
    return tuple(restrict_to_line(p, line) for p in line_components(theta, line))


@lru_cache(maxsize=512)
def pi_matrix(line, k):
    """pi_L on degree-k coefficient triples: rows index S_k^3, columns S'_k^3 as (u, v, normal) blocks."""
    size, width = monomial_count(k), k + 1
    q, r = line.free_indices
    entries = {}
    for j, row in enumerate(restriction_rows(line, k)):
        for col, value in enumerate(row):
            if not value:
                continue
            entries.setdefault(q * size + j, {})[col] = value
            entries.setdefault(r * size + j, {})[width + col] = value
            for i, c in enumerate(line.coefficients):
                if c:
                    entries.setdefault(i * size + j, {})[2 * width + col] = c * value
    return RatMatrix.from_sparse(entries, (3 * size, 3 * width))


def pi_vectors(vectors, k, line):
    if not vectors:
        return []
    return (RatMatrix.from_rows(vectors, 3 * monomial_count(k)) @ pi_matrix(line, k)).row_vectors()


def pi_vector(theta, line):
    return pi_vectors([theta.vector()], theta.degree, line)[0]


def section_dimension(k, split):
    return max(0, k - split.a + 1) + max(0, k - split.b + 1)


@dataclass(frozen=True)
class RestrictedModuleSlices:
    line: object
    bound: int
    slices: dict = field(hash=False, compare=False)

    def dimension(self, k):
        return len(self.slices.get(k, ()))


def _times_binary_monomial(vector, d, shift, j):
    """Multiply a degree-d vector of S'^3 by u^(shift-j)*v^j."""
    width_in, width_out = d + 1, d + shift + 1
    out = [0] * (3 * width_out)
    for block in range(3):
        for p in range(width_in):
            value = vector[block * width_in + p]
            if value:
                out[block * width_out + p + j] = value
    return tuple(out)


def _module_generators(cls):
    if cls is None:
        return None
    if cls.kind == CurveKind.FREE:
        return cls.basis
    if cls.kind == CurveKind.PLUS_ONE and cls.certified:
        return cls.generators
    return None


def image_slices(f, line, bound, cls=None):
    """Basis of pi_L(D_0(C)_k) inside S'_k^3 for every k <= bound.

    With a free or certified plus-one classification the image is spanned by
    u^i*v^j times the images of the generators, and its dimension is read off
    the Hilbert function; otherwise D_0(C)_k is solved degree by degree.
    """
    generators = _module_generators(cls)
    if generators is not None:
        images = [(g.degree, pi_vector(g, line)) for g in generators]
    slices = {}
    previous_dim = 0
    for k in range(bound + 1):
        if generators is None:
            kernel = syzygy_vectors(f, k)
            spanning = pi_vectors(list(kernel), k, line)
            dimension = len(kernel)
        else:
            spanning = [
                _times_binary_monomial(vector, d, k - d, j)
                for d, vector in images if d <= k
                for j in range(k - d + 1)
            ]
            dimension = cls.hilbert_dimension(k)
        chosen = independent_subset(spanning, 3 * (k + 1))
        expected = dimension - previous_dim
        if len(chosen) != expected:
            raise InternalInconsistencyError(
                f'pi_L image of D_0({f})_{k} on {line} has dimension {len(chosen)}, '
                f'expected dim D_0_k - dim D_0_(k-1) = {expected}'
            )
        slices[k] = tuple(spanning[n] for n in chosen)
        previous_dim = dimension
    return RestrictedModuleSlices(line, bound, slices)


def _multiplication_constraints(functionals, k):
    """Rows w∘(u*.) and w∘(v*.) on S'_k^3 for functionals w on S'_(k+1)^3."""
    size_in, size_out = k + 1, k + 2
    rows = []
    for w in functionals:
        by_u = [0] * (3 * size_in)
        by_v = [0] * (3 * size_in)
        for block in range(3):
            for p in range(size_in):
                # u*u^i*v^(k-i) keeps its position, v*... moves one step right.
                by_u[block * size_in + p] = w[block * size_out + p]
                by_v[block * size_in + p] = w[block * size_out + p + 1]
        rows.extend((by_u, by_v))
    return rows


@dataclass(frozen=True)
class SectionSpaces:
    dims: dict = field(hash=False, compare=False)
    split: SplittingType = None
    bases: dict = field(default=None, hash=False, compare=False, repr=False)


def reconstruct_sections(image, n):
    """Saturate the image top-down: Sat_k = {s : u*s, v*s in Sat_(k+1)}."""
    top = image.bound
    saturated = {top: image.slices[top]}
    for k in range(top - 1, -1, -1):
        functionals = annihilator(list(saturated[k + 1]), 3 * (k + 2))
        if not functionals:
            saturated[k] = tuple(
                tuple(1 if i == j else 0 for j in range(3 * (k + 1))) for i in range(3 * (k + 1))
            )
            continue
        constraints = _multiplication_constraints(functionals, k)
        saturated[k] = tuple(RatMatrix.from_rows(constraints, 3 * (k + 1)).nullspace())
    a = next((k for k in range(top + 1) if saturated[k]), None)
    if a is None:
        raise InternalInconsistencyError('E_C|_L has no sections in any computed degree')
    split = SplittingType.of(a, n - 1 - a)
    dims = {k: len(basis) for k, basis in saturated.items()}
    return SectionSpaces(dims, split, saturated)


@dataclass(frozen=True)
class SplittingResult:
    line: object
    split: SplittingType
    coker_dim: int
    coker_by_degree: dict = field(hash=False, compare=False)
    c2: int = 0


def _require_free_or_plus_one(cls):
    if cls.kind not in (CurveKind.FREE, CurveKind.PLUS_ONE):
        raise UnsupportedClassificationError(
            'splitting types need c2, which is only available for free and plus-one generated curves'
        )


@lru_cache(maxsize=256)
def splitting_type(f, cls, line):
    """Splitting type of E_C on L with the Yoshinaga certificate c2 - ab = dim coker(pi_L)."""
    _require_free_or_plus_one(cls)
    n = f.degree
    c2 = chern_of_classification(cls, n).c2
    top = n + c2 + 2
    stable = lambda k, sl: sl.dimension(k) == 2 * k + 2 - (n - 1)
    image = image_slices(f, line, top, cls)
    while not (stable(top - 1, image) and stable(top, image)):
        if top > 2 * (n + c2 + 2):
            raise InternalInconsistencyError(
                f'pi_L image on {line} never reaches full rank up to degree {top}'
            )
        top += 1
        logger.warning(f'cokernel of pi_L on {line} reaches degree {top - 2}; extending the window')
        image = image_slices(f, line, top, cls)

    sections = reconstruct_sections(image, n)
    split = sections.split
    coker_by_degree = {}
    for k in range(top + 1):
        expected = section_dimension(k, split)
        if sections.dims[k] != expected:
            raise InternalInconsistencyError(
                f'section space of degree {k} on {line} has dimension {sections.dims[k]}, '
                f'a split bundle of type {split.as_tuple()} has {expected}'
            )
        if not contains(sections.bases[k], image.slices[k], 3 * (k + 1)):
            raise InternalInconsistencyError(f'pi_L image of degree {k} on {line} escapes the sections')
        residual = sections.dims[k] - image.dimension(k)
        if residual < 0:
            raise InternalInconsistencyError(f'negative cokernel in degree {k} on {line}')
        if residual:
            coker_by_degree[k] = residual

    coker = sum(coker_by_degree.values())
    if coker != c2 - split.a * split.b:
        raise InternalInconsistencyError(
            f'Yoshinaga identity fails on {line}: c2 - ab = {c2 - split.a * split.b}, coker = {coker}'
        )
    return SplittingResult(line, split, coker, coker_by_degree, c2)


def allowed_pairs(cls):
    """{(d2, d3-1), (d2-1, d3), (d2-(d-d3+1), d)}, each normalized a <= b."""
    if cls.kind != CurveKind.PLUS_ONE:
        raise UnsupportedClassificationError('allowed splitting pairs are defined for plus-one generated curves')
    d2, d3, d = cls.d2, cls.d3, cls.level
    return frozenset({
        SplittingType.of(d2, d3 - 1),
        SplittingType.of(d2 - 1, d3),
        SplittingType.of(d2 - (d - d3 + 1), d),
    })


@dataclass(frozen=True)
class GenericSplitting:
    split: SplittingType
    results: tuple
    even_degree_drop: bool


def generic_splitting(f, cls, trials=None, seed=None):
    """Largest-a splitting type over `trials` seeded random lines."""
    _require_free_or_plus_one(cls)
    trials = settings.CURVAS['GENERIC_TRIALS'] if trials is None else trials
    results = tuple(splitting_type(f, cls, line) for line in random_lines(trials, seed, avoid=f))
    split = max((r.split for r in results), key=lambda s: s.a)
    n = f.degree
    d2 = min(cls.exponents)
    if cls.kind == CurveKind.FREE:
        consistent = split.a == d2
    else:
        consistent = split.a == d2 or (n % 2 == 0 and split.a == d2 - 1)
    if not consistent:
        raise InternalInconsistencyError(
            f'generic splitting {split.as_tuple()} of {f} contradicts exponents {cls.exponents}'
        )
    return GenericSplitting(split, results, split.a == d2 - 1)


def jumping_lines(f, cls, lines, generic=None):
    """Lines among `lines` whose splitting type differs from the generic one."""
    generic = generic or generic_splitting(f, cls).split
    jumps = []
    for line in lines:
        result = splitting_type(f, cls, line)
        if result.split != generic:
            jumps.append(result)
    return jumps
