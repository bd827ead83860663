import logging
import random

from django.conf import settings

from polycore.exceptions import InvalidParameterError
from polycore.polys import LinearForm, restrict_to_line

logger = logging.getLogger(__name__)


def random_lines(count, seed=None, avoid=None, coeff_bound=None, exclude=()):
    """`count` distinct seeded lines with integer coefficients in [-bound, bound].

    Lines that are components of the curve `avoid` are resampled.
    """
    conf = settings.CURVAS
    seed = conf['DEFAULT_SEED'] if seed is None else seed
    coeff_bound = conf['LINE_COEFF_BOUND'] if coeff_bound is None else coeff_bound
    rng = random.Random(seed)
    seen = set(exclude)
    lines = []
    attempts = 0
    while len(lines) < count:
        attempts += 1
        if attempts > 100 * (count + 1):
            raise InvalidParameterError(f'could not find {count} distinct lines with coefficients in [-{coeff_bound}, {coeff_bound}]')
        coeffs = [rng.randint(-coeff_bound, coeff_bound) for _ in range(3)]
        if not any(coeffs):
            continue
        line = LinearForm.of(*coeffs)
        if line in seen:
            continue
        if avoid is not None and restrict_to_line(avoid, line).is_zero:
            logger.warning(f'sampled line {line} is a component of {avoid}; resampling')
            seen.add(line)
            continue
        seen.add(line)
        lines.append(line)
    return lines
