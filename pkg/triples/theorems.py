"""Mechanical verification of the addition-deletion theorems on triples.

Each verifier classifies both curves of a triple, decides whether the
theorem's hypotheses hold, and compares the predicted conclusion with the
computed one. Exponent pairs are unordered: a verifier tries both orderings
and records the witnessing one in the trace.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from django.conf import settings
from django.db import models

from logmod.classification import CurveKind, classify
from polycore.exceptions import (
    InternalInconsistencyError,
    LineComponentError,
    UnsupportedClassificationError,
)
from polycore.polys import linear_components
from restriction.sampling import random_lines

from .deletion import delete_line, make_triple
from .singular import lines_through_pairs, singular_points

logger = logging.getLogger(__name__)


class Verdict(models.TextChoices):
    CONFIRMED = 'confirmed', 'Confirmed'
    HYPOTHESIS_NOT_MET = 'hypothesis_not_met', 'Hypothesis not met'
    REFUTED = 'REFUTED', 'Refuted'


class Theorem(models.TextChoices):
    ADDITION = 'addition', 'Addition'
    DELETION = 'deletion', 'Deletion (exponent computation)'
    ADDITION_CONVERSE = 'addition_converse', 'Addition converse'
    DELETION_INVERSE = 'deletion_inverse', 'Deletion inverse'
    EQUIVALENCE = 'equivalence', 'Addition-deletion equivalence'
    DELETION_CHARACTERIZATION = 'deletion_characterization', 'Freeness via deletion'
    ADDITION_CHARACTERIZATION = 'addition_characterization', 'Freeness via addition'


class Mode(models.TextChoices):
    ADDITION = 'addition', 'Addition'
    DELETION = 'deletion', 'Deletion'


@dataclass
class TheoremReport:
    theorem: str
    hypotheses: dict
    verdict: str
    predicted: dict = None
    computed: dict = None
    trace: dict = field(default_factory=dict)

    @property
    def refuted(self):
        return self.verdict == Verdict.REFUTED

    def as_dict(self):
        return {
            'theorem': str(self.theorem),
            'verdict': str(self.verdict),
            'hypotheses': dict(self.hypotheses),
            'predicted': self.predicted,
            'computed': self.computed,
            'trace': self.trace,
        }


def pair(a, b):
    return tuple(sorted((a, b)))


def shape(cls):
    """Kind, sorted exponents and level: the part of a classification the theorems speak about."""
    out = {'kind': cls.kind.value}
    if cls.kind != CurveKind.OTHER:
        out['exponents'] = pair(*cls.exponents)
    if cls.kind == CurveKind.PLUS_ONE:
        out['level'] = cls.level
    return out


def free_ordering(exponents, count):
    """The ordering (d2, d3) of an unordered pair with d2 + 1 = count, or None."""
    for d2, d3 in (tuple(exponents), tuple(exponents)[::-1]):
        if d2 + 1 == count:
            return d2, d3
    return None


def _triple_trace(t):
    return {
        'line': str(t.line),
        'card': t.card,
        'eps': t.eps,
        'eps_source': str(t.eps_source),
        'degree_C': t.f.degree,
        'degree_C_prime': t.f_prime.degree,
    }


def _conclude(theorem, hypotheses, predicted, computed, trace):
    verdict = Verdict.CONFIRMED if predicted == computed else Verdict.REFUTED
    if verdict == Verdict.REFUTED:
        logger.error(f'{theorem} REFUTED: predicted {predicted}, computed {computed}, trace {trace}')
    return TheoremReport(theorem, hypotheses, verdict, predicted, computed, trace)


def _not_met(theorem, hypotheses, trace):
    logger.info(f'{theorem}: hypotheses {hypotheses} not met')
    return TheoremReport(theorem, hypotheses, Verdict.HYPOTHESIS_NOT_MET, trace=trace)


def verify_addition(t):
    """C' free (d2, d3) => C free (d2, d3+1) when d2+1 = |C''|+eps, else POG (d2+1, d3+1) of level |C''|+eps-1."""
    trace = _triple_trace(t)
    cls_prime = classify(t.f_prime)
    trace['C_prime'] = cls_prime.summary()
    hypotheses = {'C_prime_free': cls_prime.kind == CurveKind.FREE}
    if not all(hypotheses.values()):
        return _not_met(Theorem.ADDITION, hypotheses, trace)

    ordering = free_ordering(cls_prime.exponents, t.count)
    if ordering:
        d2, d3 = ordering
        predicted = {'kind': CurveKind.FREE.value, 'exponents': pair(d2, d3 + 1)}
        trace['branch'] = 'free'
        trace['ordering'] = ordering
    else:
        d2, d3 = cls_prime.exponents
        predicted = {
            'kind': CurveKind.PLUS_ONE.value,
            'exponents': pair(d2 + 1, d3 + 1),
            'level': t.count - 1,
        }
        trace['branch'] = 'plus_one'
    cls = classify(t.f)
    trace['C'] = cls.summary()
    return _conclude(Theorem.ADDITION, hypotheses, predicted, shape(cls), trace)


def verify_deletion(t):
    """C free (d2, d3) => C' free (d2, d3-1) with |C''|+eps = d2+1, or POG (d2, d3) of level deg C' - |C''| - eps."""
    trace = _triple_trace(t)
    cls = classify(t.f)
    trace['C'] = cls.summary()
    hypotheses = {'C_free': cls.kind == CurveKind.FREE}
    if not all(hypotheses.values()):
        return _not_met(Theorem.DELETION, hypotheses, trace)

    ordering = free_ordering(cls.exponents, t.count)
    if ordering:
        d2, d3 = ordering
        predicted = {'kind': CurveKind.FREE.value, 'exponents': pair(d2, d3 - 1)}
        trace['branch'] = 'free'
        trace['ordering'] = ordering
    else:
        predicted = {
            'kind': CurveKind.PLUS_ONE.value,
            'exponents': pair(*cls.exponents),
            'level': t.f_prime.degree - t.count,
        }
        trace['branch'] = 'plus_one'
    cls_prime = classify(t.f_prime)
    trace['C_prime'] = cls_prime.summary()
    return _conclude(Theorem.DELETION, hypotheses, predicted, shape(cls_prime), trace)


def verify_addition_converse(t):
    """C POG (d2, d3; d) with |C''|+eps = d+1 => C' free (d2-1, d3-1)."""
    trace = _triple_trace(t)
    cls = classify(t.f)
    trace['C'] = cls.summary()
    is_pog = cls.kind == CurveKind.PLUS_ONE
    hypotheses = {
        'C_plus_one_generated': is_pog,
        'count_is_level_plus_one': is_pog and t.count == cls.level + 1,
    }
    if not all(hypotheses.values()):
        return _not_met(Theorem.ADDITION_CONVERSE, hypotheses, trace)
    d2, d3 = cls.exponents
    predicted = {'kind': CurveKind.FREE.value, 'exponents': pair(d2 - 1, d3 - 1)}
    cls_prime = classify(t.f_prime)
    trace['C_prime'] = cls_prime.summary()
    return _conclude(Theorem.ADDITION_CONVERSE, hypotheses, predicted, shape(cls_prime), trace)


def verify_deletion_inverse(t):
    """C' POG (d2, d3; d) with d = deg C' - |C''| - eps => C free (d2, d3)."""
    trace = _triple_trace(t)
    cls_prime = classify(t.f_prime)
    trace['C_prime'] = cls_prime.summary()
    is_pog = cls_prime.kind == CurveKind.PLUS_ONE
    hypotheses = {
        'C_prime_plus_one_generated': is_pog,
        'level_formula': is_pog and cls_prime.level == t.f_prime.degree - t.count,
    }
    if not all(hypotheses.values()):
        return _not_met(Theorem.DELETION_INVERSE, hypotheses, trace)
    predicted = {'kind': CurveKind.FREE.value, 'exponents': pair(*cls_prime.exponents)}
    cls = classify(t.f)
    trace['C'] = cls.summary()
    return _conclude(Theorem.DELETION_INVERSE, hypotheses, predicted, shape(cls), trace)


def _partner(cls, d2):
    """The exponent paired with d2 when cls is free and d2 is one of its exponents."""
    if cls.kind != CurveKind.FREE:
        return None
    a, b = cls.exponents
    if a == d2:
        return b
    if b == d2:
        return a
    return None


def verify_equivalence(t, d2):
    """With |C''|+eps = d2+1: C' free (d2, d3) <=> C free (d2, d3+1)."""
    trace = _triple_trace(t)
    trace['d2'] = d2
    hypotheses = {'count_is_d2_plus_one': t.count == d2 + 1}
    if not all(hypotheses.values()):
        return _not_met(Theorem.EQUIVALENCE, hypotheses, trace)

    cls_prime, cls = classify(t.f_prime), classify(t.f)
    trace['C_prime'] = cls_prime.summary()
    trace['C'] = cls.summary()
    d3 = _partner(cls_prime, d2)
    e3 = _partner(cls, d2)
    left, right = d3 is not None, e3 is not None
    trace['sides'] = (
        'both sides true' if left and right
        else 'both sides false' if not (left or right)
        else 'only C\' free' if left else 'only C free'
    )
    predicted = {'C_prime_free': left, 'C_free': left, 'd3_plus_one': None if d3 is None else d3 + 1}
    computed = {'C_prime_free': left, 'C_free': right, 'd3_plus_one': e3}
    return _conclude(Theorem.EQUIVALENCE, hypotheses, predicted, computed, trace)


@dataclass(frozen=True)
class EpsilonSolution:
    eps: int
    route: str


def solve_epsilon(t):
    """Back-derive eps(C', L) from the classifications of C (free) and C'."""
    cls = classify(t.f)
    if cls.kind != CurveKind.FREE:
        raise UnsupportedClassificationError(f'eps can only be solved when C is free; C is {cls.kind.label}')
    cls_prime = classify(t.f_prime)
    if cls_prime.kind == CurveKind.FREE:
        target = pair(*cls_prime.exponents)
        for d2, d3 in (cls.exponents, cls.exponents[::-1]):
            if pair(d2, d3 - 1) == target:
                return EpsilonSolution(d2 + 1 - t.card, 'free')
        raise InternalInconsistencyError(
            f'C\' exponents {target} are not of the form (d2, d3-1) for C exponents {cls.exponents}'
        )
    if cls_prime.kind == CurveKind.PLUS_ONE:
        if pair(*cls_prime.exponents) != pair(*cls.exponents):
            raise InternalInconsistencyError(
                f'plus-one generated C\' has exponents {cls_prime.exponents}, C has {cls.exponents}'
            )
        return EpsilonSolution(t.f_prime.degree - t.card - cls_prime.level, 'plus_one')
    raise UnsupportedClassificationError('eps cannot be solved when C\' is neither free nor plus-one generated')


def deletion_condition(t, cls_prime):
    """Exponents of C implied by condition (i) or (ii) of the deletion characterization, or None."""
    if cls_prime.kind == CurveKind.FREE:
        ordering = free_ordering(cls_prime.exponents, t.count)
        if ordering:
            return 'i', pair(ordering[0], ordering[1] + 1)
    if cls_prime.kind == CurveKind.PLUS_ONE and cls_prime.level == t.f.degree - 1 - t.count:
        return 'ii', pair(*cls_prime.exponents)
    return None, None


def addition_condition(t, cls_union):
    """Exponents of C' implied by condition (i) or (ii) of the addition characterization, or None."""
    if cls_union.kind == CurveKind.FREE:
        ordering = free_ordering(cls_union.exponents, t.count)
        if ordering:
            return 'i', pair(ordering[0], ordering[1] - 1)
    if cls_union.kind == CurveKind.PLUS_ONE and cls_union.level == t.count - 1:
        d2, d3 = cls_union.exponents
        return 'ii', pair(d2 - 1, d3 - 1)
    return None, None


def _characterize_deletion(f, line):
    components = linear_components(f)
    if not components:
        raise LineComponentError(f'{f} has no linear component to delete')
    line = line or components[0]
    if line not in components:
        raise LineComponentError(f'{line} is not a component of {f}')
    t = delete_line(f, line)
    cls, cls_prime = classify(f), classify(t.f_prime)
    condition, implied = deletion_condition(t, cls_prime)
    trace = _triple_trace(t)
    trace.update({'C': cls.summary(), 'C_prime': cls_prime.summary(), 'condition': condition})
    hypotheses = {'linear_component': True}
    predicted = {'C_free': condition is not None, 'exponents': implied}
    computed = {
        'C_free': cls.kind == CurveKind.FREE,
        'exponents': pair(*cls.exponents) if cls.kind == CurveKind.FREE else None,
    }
    return _conclude(Theorem.DELETION_CHARACTERIZATION, hypotheses, predicted, computed, trace)


def addition_row(f, line):
    """Add one line to C and read off which addition condition, if any, it satisfies."""
    t = make_triple(f, line)
    cls_union = classify(t.f)
    condition, implied = addition_condition(t, cls_union)
    return {
        'line': str(line),
        'card': t.card,
        'union': shape(cls_union),
        'condition': condition,
        'implied_exponents': implied,
    }


def candidate_lines(f, samples=None, seed=None):
    """Seeded random lines plus the lines through pairs of singular points, components excluded."""
    components = set(linear_components(f))
    sampled = random_lines(
        settings.CURVAS['GENERIC_TRIALS'] if samples is None else samples, seed, avoid=f,
    )
    structured = [l for l in lines_through_pairs(singular_points(f).points) if l not in components]
    seen, lines = set(), []
    for line in sampled + structured:
        if line not in seen:
            seen.add(line)
            lines.append(line)
    return lines


def _characterize_addition(f, samples, seed, workers):
    cls = classify(f)
    lines = candidate_lines(f, samples, seed)
    workers = settings.CURVAS['SCAN_WORKERS'] if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda l: addition_row(f, l), lines))
    else:
        rows = [addition_row(f, l) for l in lines]

    exponents = pair(*cls.exponents) if cls.kind == CurveKind.FREE else None
    violations = []
    for row in rows:
        certified = row['condition'] is not None
        if exponents is not None and (not certified or row['implied_exponents'] != exponents):
            violations.append(row['line'])
        elif exponents is None and certified:
            violations.append(row['line'])
    certifying = sum(1 for r in rows if r['condition'] is not None)
    trace = {
        'C': cls.summary(),
        'lines': rows,
        'certifying_lines': certifying,
        'sampled_lines': len(lines),
    }
    hypotheses = {'lines_sampled': bool(lines)}
    predicted = {'violations': []}
    computed = {'violations': violations}
    return _conclude(Theorem.ADDITION_CHARACTERIZATION, hypotheses, predicted, computed, trace)


def characterize_freeness(f, mode, line=None, samples=None, seed=None, workers=None):
    """Check the freeness characterizations against classify(f).

    Deletion mode tests one linear component (the first one by default).
    Addition mode requires: C free => every line satisfies (i) or (ii) with
    C's exponents, and any line satisfying (i) or (ii) => C free with the
    implied exponents.
    """
    if mode == Mode.DELETION:
        return _characterize_deletion(f, line)
    if mode == Mode.ADDITION:
        return _characterize_addition(f, samples, seed, workers)
    raise ValueError(f'unknown mode {mode!r}')
