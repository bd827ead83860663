"""Degreewise checks of 0 -> D(C') -> D(C) -> D(C''), the maps being alpha_L* and rho."""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from logmod.derivations import times_monomial, triple_dimension
from logmod.syzygies import require_reduced, syzygy_vectors
from polycore.exceptions import InternalInconsistencyError
from polycore.matrices import RatMatrix, span_rank
from polycore.polys import gradient, monomial_count, monomial_index, monomials, restrict_to_line, squarefree_part
from restriction.splitting import RestrictedDerivation, pi_vectors

logger = logging.getLogger(__name__)


@lru_cache(maxsize=512)
def log_derivations(f, k):
    """Basis of D(C)_k: triples (a, b, c) with a*f_x + b*f_y + c*f_z in f*S_(k-1).

    Solved as the kernel of (a, b, c, h) -> a*f_x + b*f_y + c*f_z - h*f and
    projected to (a, b, c); the projection is injective since f != 0.
    """
    require_reduced(f)
    n = f.degree
    size = monomial_count(k)
    target = monomial_index(k + n - 1)
    entries = {}
    for block, part in enumerate(gradient(f)):
        for col, m in enumerate(monomials(k)):
            for monom, coeff in part.coefficients.items():
                row = target[(m[0] + monom[0], m[1] + monom[1], m[2] + monom[2])]
                entries.setdefault(row, {})[block * size + col] = coeff
    for col, m in enumerate(monomials(k - 1)):
        for monom, coeff in f.coefficients.items():
            row = target[(m[0] + monom[0], m[1] + monom[1], m[2] + monom[2])]
            entries.setdefault(row, {})[3 * size + col] = -coeff
    shape = (monomial_count(k + n - 1), 3 * size + monomial_count(k - 1))
    kernel = RatMatrix.from_sparse(entries, shape).nullspace()
    basis = tuple(tuple(v[:3 * size]) for v in kernel)
    expected = len(syzygy_vectors(f, k)) + monomial_count(k - 1)
    if len(basis) != expected:
        raise InternalInconsistencyError(
            f'dim D({f})_{k} = {len(basis)} but dim D_0 + dim S_(k-1) = {expected}'
        )
    return basis


def _times_linear_form(vector, k, line):
    out = [0] * triple_dimension(k + 1)
    for coeff, var in zip(line.coefficients, ((1, 0, 0), (0, 1, 0), (0, 0, 1))):
        if coeff:
            for n, value in enumerate(times_monomial(vector, k, var)):
                out[n] += coeff * value
    return tuple(out)


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    dim_d: int
    dim_d_prime: int
    injective: bool
    kernel_dim: int
    kernel_matches: bool
    tangent: bool

    @property
    def passed(self):
        return self.injective and self.kernel_matches and self.tangent

    def as_dict(self):
        return {
            'degree': self.degree,
            'dim_D_C': self.dim_d,
            'dim_D_C_prime_shifted': self.dim_d_prime,
            'a_injective': self.injective,
            'kernel_of_rho': self.kernel_dim,
            'b_kernel_matches': self.kernel_matches,
            'c_tangent': self.tangent,
        }


@dataclass(frozen=True)
class ExactnessReport:
    line: str
    bound: int
    checks: tuple = field(default=())

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def as_dict(self):
        return {
            'line': self.line,
            'bound': self.bound,
            'passed': self.passed,
            'degrees': [c.as_dict() for c in self.checks],
        }


def check_exact_sequence(t, bound=None):
    """(a) alpha_L* is injective, (b) ker rho = alpha_L*D(C')_(k-1), (c) rho(D(C)) is tangent to C''."""
    bound = 2 * t.f.degree if bound is None else bound
    g = squarefree_part(restrict_to_line(t.f_prime, t.line))
    checks = []
    for k in range(bound + 1):
        basis = log_derivations(t.f, k)
        lower = log_derivations(t.f_prime, k - 1) if k > 0 else ()
        size = triple_dimension(k)

        multiplied = [_times_linear_form(v, k - 1, t.line) for v in lower]
        injective = span_rank(multiplied, size) == len(lower)
        inside = span_rank(list(basis) + multiplied, size) == len(basis)

        width = k + 1
        restricted = [
            RestrictedDerivation.from_vector(k, w[:2 * width]) for w in pi_vectors(list(basis), k, t.line)
        ]
        image_rank = span_rank([r.vector() for r in restricted], 2 * (k + 1))
        kernel_dim = len(basis) - image_rank

        tangent = all(
            r.is_zero or r.apply(g).poly.rem(g.poly).is_zero
            for r in restricted
        )
        check = DegreeCheck(k, len(basis), len(lower), injective and inside,
                            kernel_dim, kernel_dim == len(lower), tangent)
        if not check.passed:
            logger.error(f'exact sequence check failed for {t.line} in degree {k}: {check}')
        checks.append(check)
    return ExactnessReport(str(t.line), bound, tuple(checks))
