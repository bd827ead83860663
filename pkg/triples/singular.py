"""Singular points of a curve and the lines joining them."""
import logging
from dataclasses import dataclass
from itertools import combinations

from sympy import QQ, solve_poly_system

from polycore.polys import GENS, LinearForm, gradient, linear_components, normalize_projective

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SingularPoints:
    points: tuple
    rational_only: bool


def _meet(l1, l2):
    (a0, a1, a2), (b0, b1, b2) = l1.coefficients, l2.coefficients
    return normalize_projective((a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0))


def _chart_solutions(f):
    """QQ-rational common zeros of the partials, chart by chart: z=1, then z=0 y=1, then [1:0:0]."""
    partials = [p.as_expr() for p in gradient(f)]
    x, y, z = GENS
    found = []
    charts = (
        ({z: 1}, (x, y), lambda s: (s[0], s[1], 1)),
        ({z: 0, y: 1}, (x,), lambda s: (s[0], 1, 0)),
    )
    for fixed, unknowns, lift in charts:
        equations = [e.subs(fixed) for e in partials]
        equations = [e for e in equations if e != 0]
        if not equations or any(e.is_number for e in equations):
            continue
        try:
            solutions = solve_poly_system(equations, *unknowns) or []
        except NotImplementedError:
            logger.warning(f'singular locus of {f} in chart {fixed} is not zero-dimensional; skipped')
            continue
        for s in solutions:
            if all(v.is_rational for v in s):
                found.append(normalize_projective(lift(s)))
    if all(e.subs({x: 1, y: 0, z: 0}) == 0 for e in partials):
        found.append((QQ.one, QQ.zero, QQ.zero))
    return found


def singular_points(f):
    """Singular points of C; exact for line arrangements, QQ-rational ones otherwise."""
    lines = linear_components(f)
    if len(lines) == f.degree:
        points = {_meet(a, b) for a, b in combinations(lines, 2)}
        rational_only = False
    else:
        points = set(_chart_solutions(f))
        rational_only = True
    ordered = tuple(sorted(points, key=lambda p: tuple(QQ.to_sympy(c) for c in p)))
    return SingularPoints(ordered, rational_only)


def lines_through_pairs(points):
    """Distinct lines joining two of the given points, in canonical order."""
    lines = {LinearForm.through(p, q) for p, q in combinations(points, 2) if p != q}
    return sorted(lines, key=lambda l: tuple(QQ.to_sympy(c) for c in l.coefficients))
