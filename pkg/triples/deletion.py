"""Deletion-restriction triples (C, C', C'') for a line L."""
import logging
from dataclasses import dataclass

from django.db import models

from logmod.syzygies import require_reduced
from polycore.exceptions import LineComponentError, NonReducedError
from polycore.polys import HomoPoly, LinearForm, distinct_root_count, restrict_to_line

logger = logging.getLogger(__name__)


class EpsSource(models.TextChoices):
    ASSUMED_ZERO = 'assumed_zero_quasihomogeneous', 'Assumed zero (quasi-homogeneous)'
    USER = 'user_supplied', 'User supplied'
    SOLVED = 'solved_from_classifications', 'Solved from classifications'


@dataclass(frozen=True)
class TripleData:
    f: HomoPoly
    f_prime: HomoPoly
    line: LinearForm
    card: int
    eps: int
    eps_source: str

    @property
    def count(self):
        """|C''| + eps."""
        return self.card + self.eps

    def with_eps(self, eps, source=EpsSource.USER):
        return TripleData(self.f, self.f_prime, self.line, self.card, eps, source)


def make_triple(f_prime, line, eps=None):
    """Add L to C': C = alpha_L * C', |C''| = number of points of C' on L."""
    require_reduced(f_prime)
    restricted = restrict_to_line(f_prime, line)
    if restricted.is_zero:
        raise LineComponentError(f'{line} is a component of {f_prime}; it cannot be added')
    card = distinct_root_count(restricted)
    if not 1 <= card <= f_prime.degree:
        raise ValueError(f'|C\'\'| = {card} outside [1, {f_prime.degree}]')
    f = line.as_poly() * f_prime
    if eps is None:
        return TripleData(f, f_prime, line, card, 0, EpsSource.ASSUMED_ZERO)
    return TripleData(f, f_prime, line, card, int(eps), EpsSource.USER)


def delete_line(f, line, eps=None):
    """Remove the component L from C: C' = f / alpha_L."""
    alpha = line.as_poly()
    if not restrict_to_line(f, line).is_zero:
        raise LineComponentError(f'{line} is not a component of {f}')
    f_prime = f.exquo(alpha)
    if restrict_to_line(f_prime, line).is_zero:
        raise NonReducedError(f'{line} divides {f} more than once', 1)
    logger.debug(f'deleted {line} from {f}: C\' = {f_prime}')
    return make_triple(f_prime, line, eps)
