"""End-to-end runs over the shipped corpus, at full sample counts and with wall-clock limits."""
import json
import time
from io import StringIO

from django.core.management import call_command
from django.test import TestCase

from chern.bundles import chern_of_classification, triple_c2_identity, twist_minus_one, twist_plus_one
from cli.curves import load_corpus
from logmod.classification import CurveKind, _classify, classify
from logmod.oracle import dense_syzygy_dimension
from logmod.syzygies import _syzygy_kernel, minimal_generators, syzygy_vectors
from polycore.polys import linear_components, parse_poly
from restriction.sampling import random_lines
from restriction.splitting import allowed_pairs, generic_splitting, splitting_type
from triples.deletion import delete_line
from triples.exactness import check_exact_sequence
from triples.theorems import Verdict, solve_epsilon, verify_deletion


def corpus():
    return {spec.name: spec.polynomial() for spec in load_corpus()}


def free_arrangements():
    return {
        spec.name: spec.polynomial() for spec in load_corpus()
        if spec.is_arrangement and classify(spec.polynomial()).kind == CurveKind.FREE
    }


def scan(name, **options):
    out = StringIO()
    call_command('scan', name, format='json', stdout=out, **options)
    return json.loads(out.getvalue())


def clear_module_caches():
    for cached in (_classify, minimal_generators, _syzygy_kernel, splitting_type):
        cached.cache_clear()


class ClassificationCorpusTest(TestCase):
    EXPECTED = {
        'x*y*z': ('free', (1, 1)),
        'x*y': ('free', (0, 1)),
        'x*y*(x+y)': ('free', (0, 2)),
        'x*y*z*(x+y)': ('free', (1, 2)),
        'x*y*z*(x+y+z)': ('plus_one_generated', (2, 2)),
        'x*y*z*(x+y+z)*(x+y)': ('free', (2, 2)),
        'x^2+y^2+z^2': ('plus_one_generated', (1, 1)),
    }
    SECONDS_PER_CURVE = 1.0

    def setUp(self):
        clear_module_caches()

    def test_classifications(self):
        for text, (kind, exponents) in self.EXPECTED.items():
            f = parse_poly(text)
            started = time.perf_counter()
            cls = classify(f)
            self.assertLess(time.perf_counter() - started, self.SECONDS_PER_CURVE, text)
            self.assertEqual(cls.kind.value, kind, text)
            self.assertEqual(tuple(sorted(cls.exponents)), exponents, text)
            if cls.kind == CurveKind.FREE:
                self.assertNotEqual(cls.saito_constant, 0, text)

    def test_exhaustive_window_agrees(self):
        for text in self.EXPECTED:
            f = parse_poly(text)
            self.assertEqual(classify(f, exhaustive=True), classify(f), text)

    def test_levels(self):
        self.assertEqual(classify(parse_poly('x*y*z*(x+y+z)')).level, 2)
        self.assertEqual(classify(parse_poly('x^2+y^2+z^2')).level, 1)


class ChernCorpusTest(TestCase):
    def test_chern_numbers(self):
        for name, f in corpus().items():
            cls = classify(f)
            cd = chern_of_classification(cls, f.degree)
            self.assertEqual(cd.c1, 1 - f.degree, name)
            d2, d3 = sorted(cls.exponents)
            if cls.kind == CurveKind.FREE:
                self.assertEqual(cd.c2, d2 * d3, name)
            else:
                self.assertEqual(cd.c2, d2 * (d3 - 1) + cls.level - d3 + 1, name)
            self.assertEqual(twist_plus_one(twist_minus_one(cd)), cd)


class YoshinagaCorpusTest(TestCase):
    LINES_PER_CURVE = 20
    SECONDS_PER_CURVE = 10.0

    def setUp(self):
        clear_module_caches()

    def test_certificate_on_sampled_lines(self):
        for name, f in corpus().items():
            started = time.perf_counter()
            cls = classify(f)
            for line in random_lines(self.LINES_PER_CURVE, seed=7, avoid=f):
                result = splitting_type(f, cls, line)
                self.assertEqual(result.coker_dim, result.c2 - result.split.a * result.split.b, (name, str(line)))
                self.assertGreaterEqual(result.coker_dim, 0)
                if cls.kind == CurveKind.FREE:
                    self.assertEqual(result.coker_dim, 0, name)
                    self.assertEqual(result.split.as_tuple(), tuple(sorted(cls.exponents)), name)
                else:
                    self.assertIn(result.split, allowed_pairs(cls), (name, str(line)))
            self.assertLess(time.perf_counter() - started, self.SECONDS_PER_CURVE, name)

    def test_generic_splitting_stays_near_the_exponent(self):
        for name, f in corpus().items():
            cls = classify(f)
            if cls.kind == CurveKind.PLUS_ONE:
                generic = generic_splitting(f, cls, trials=3, seed=7)
                d2 = min(cls.exponents)
                self.assertIn(generic.split.a, (d2, d2 - 1) if f.degree % 2 == 0 else (d2,), name)


class AdditionFuzzTest(TestCase):
    SAMPLES = 100
    SECONDS_TOTAL = 60.0

    def setUp(self):
        clear_module_caches()

    def test_addition_scan_of_free_arrangements(self):
        arrangements = free_arrangements()
        self.assertGreaterEqual(len(arrangements), 4)
        started = time.perf_counter()
        for name in arrangements:
            report = scan(name, samples=self.SAMPLES, seed=11)
            summary = report['summary']
            self.assertGreaterEqual(int(summary['lines']), self.SAMPLES, name)
            self.assertEqual(summary['refuted'], '0', name)
            self.assertEqual(summary['lines_confirmed'], summary['lines'], name)
            for row in report['scan']:
                branch_free = row['branch'] == 'free'
                card = int(row['card'])
                d2_candidates = [int(e) for e in row['theorems'][0]['trace']['C_prime']['exponents']]
                self.assertEqual(branch_free, card - 1 in d2_candidates, (name, row['line']))
        self.assertLess(time.perf_counter() - started, self.SECONDS_TOTAL)

    def test_non_free_curve_is_never_certified(self):
        report = scan('four_generic', samples=4, seed=11)
        self.assertEqual(report['summary']['certifying_lines'], '0')


class DeletionFuzzTest(TestCase):
    def test_every_component_of_every_free_arrangement(self):
        for name, f in free_arrangements().items():
            for line in linear_components(f):
                t = delete_line(f, line)
                self.assertEqual(verify_deletion(t).verdict, Verdict.CONFIRMED, (name, str(line)))
                self.assertEqual(solve_epsilon(t).eps, 0, (name, str(line)))

    def test_deletion_scan_command(self):
        report = scan('five_lines', mode='deletion')
        self.assertEqual(report['summary']['lines'], '5')
        self.assertEqual(report['summary']['refuted'], '0')
        self.assertEqual(report['summary']['eps_zero'], '5')


class ExactSequenceCorpusTest(TestCase):
    def test_every_corpus_triple(self):
        for name, f in corpus().items():
            for line in linear_components(f):
                t = delete_line(f, line)
                report = check_exact_sequence(t)
                self.assertTrue(report.passed, (name, str(line), report.as_dict()))

    def test_triple_chern_bookkeeping(self):
        for name, f in corpus().items():
            for line in linear_components(f):
                t = delete_line(f, line)
                cls, cls_prime = classify(t.f), classify(t.f_prime)
                if CurveKind.OTHER in (cls.kind, cls_prime.kind):
                    continue
                identity = triple_c2_identity(
                    chern_of_classification(cls, t.f.degree),
                    chern_of_classification(cls_prime, t.f_prime.degree),
                    t.card, t.eps,
                )
                self.assertEqual(identity.residual, 0, (name, str(line)))


class OracleCorpusTest(TestCase):
    def test_dense_solve_matches(self):
        for name, f in corpus().items():
            for k in range(2 * f.degree + 1):
                self.assertEqual(dense_syzygy_dimension(f, k), len(syzygy_vectors(f, k)), (name, k))
