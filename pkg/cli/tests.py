import json
import tempfile
from io import StringIO
from pathlib import Path

from django.conf import settings
from django.core.management import call_command
from django.core.management.base import CommandError
from django.db import IntegrityError
from django.test import TestCase

from cli.curves import CurveSpec, load_corpus, parse_curve_text, resolve_curve, spec_from_fields
from cli.forms import CurveSpecForm
from cli.models import Curve, Report, SeederStatus
from cli.reports import build_report, is_refuted, render_json, render_text, stringify
from polycore.exceptions import PolynomialParseError
from polycore.polys import LinearForm, parse_poly


def run(command, *args, **options):
    out = StringIO()
    call_command(command, *args, stdout=out, **options)
    return out.getvalue()


def run_json(command, *args, **options):
    report = json.loads(run(command, *args, format='json', **options))
    report.pop('timing')
    return report


class CurveSpecFormTests(TestCase):
    def test_poly_only(self):
        form = CurveSpecForm({'name': 'c', 'poly': 'x^2 + y^2 + z^2'})
        self.assertTrue(form.is_valid(), form.errors)

    def test_lines_are_parsed(self):
        form = CurveSpecForm({'lines': '1 0 0\n0 1 0; x + y'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['lines'], [LinearForm.of(1, 0, 0), LinearForm.of(0, 1, 0), LinearForm.of(1, 1, 0)])

    def test_exactly_one_source(self):
        self.assertFalse(CurveSpecForm({'poly': 'x*y', 'lines': 'z'}).is_valid())
        self.assertFalse(CurveSpecForm({}).is_valid())

    def test_repeated_line_is_kept_for_the_reducedness_check(self):
        form = CurveSpecForm({'lines': 'x; 2*x'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['lines'], [LinearForm.of(1, 0, 0)] * 2)

    def test_eps_overrides(self):
        form = CurveSpecForm({'lines': 'x; y', 'eps': '1 1 0 = 2'})
        self.assertTrue(form.is_valid(), form.errors)
        self.assertEqual(form.cleaned_data['eps'], {LinearForm.of(1, 1, 0): 2})

    def test_bad_eps(self):
        self.assertFalse(CurveSpecForm({'lines': 'x; y', 'eps': '1 1 0'}).is_valid())
        self.assertFalse(CurveSpecForm({'lines': 'x; y', 'eps': '1 1 0 = one'}).is_valid())


class CurveFileTests(TestCase):
    def test_headers_comments_and_continuations(self):
        spec = parse_curve_text(
            '# a pencil plus one line\n'
            'name: near\n'
            'lines:\n'
            '  1 0 0   # x\n'
            '  0 1 0\n'
            '  z; x + y\n'
            'eps: 0 0 1 = 0\n'
        )
        self.assertEqual(spec.name, 'near')
        self.assertEqual(len(spec.lines), 4)
        self.assertEqual(spec.eps_for(LinearForm.of(0, 0, 1)), 0)
        self.assertEqual(spec.polynomial(), parse_poly('x*y*z*(x+y)'))

    def test_default_name_is_the_file_stem(self):
        spec = parse_curve_text('poly: x*y*z', default_name='triangle2')
        self.assertEqual(spec.name, 'triangle2')

    def test_stray_text(self):
        with self.assertRaises(PolynomialParseError):
            parse_curve_text('name: a\nx*y*z\n')

    def test_corpus_loads(self):
        names = {spec.name for spec in load_corpus()}
        self.assertTrue({'triangle', 'pencil', 'near_pencil', 'four_generic', 'five_lines',
                         'smooth_conic', 'conic_tangent'} <= names)

    def test_corpus_curves_are_reduced(self):
        for spec in load_corpus():
            self.assertGreater(spec.polynomial().degree, 0, spec.name)

    def test_resolve_file_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'mine.curve'
            path.write_text('poly: x*y\n', encoding='utf-8')
            self.assertEqual(resolve_curve(str(path)).name, 'mine')

    def test_unknown_reference(self):
        with self.assertRaises(PolynomialParseError):
            resolve_curve('no_such_curve')


class CurveModelTests(TestCase):
    def test_slug_and_round_trip(self):
        curve = Curve.objects.create(
            name='Two Lines', kind=Curve.Kind.LINES, lines=[['1', '0', '0'], ['0', '1', '0']],
        )
        self.assertEqual(curve.slug, 'two-lines')
        self.assertEqual(curve.to_spec().polynomial(), parse_poly('x*y'))
        self.assertEqual(resolve_curve('two-lines').name, 'Two Lines')

    def test_fields_round_trip(self):
        spec = CurveSpec(name='tri', lines=(LinearForm.of(1, 0, 0), LinearForm.of(0, 1, 0), LinearForm.of(0, 0, 1)),
                         eps_overrides={LinearForm.of(1, 0, 0): 0})
        curve = Curve.objects.create(**spec.as_fields())
        again = curve.to_spec()
        self.assertEqual(again.lines, spec.lines)
        self.assertEqual(again.eps_overrides, spec.eps_overrides)

    def test_unique_name(self):
        Curve.objects.create(name='dup', expression='x*y')
        with self.assertRaises(IntegrityError):
            Curve.objects.create(name='dup', expression='x*z', slug='dup-2')

    def test_seeder_status_str(self):
        status = SeederStatus.objects.create(name='seed_corpus')
        self.assertIn('Pending', str(status))
        status.executed = True
        status.save()
        self.assertIn('Executed', str(status))


class SeedCorpusCommandTests(TestCase):
    def test_seeds_once(self):
        run('seed_corpus')
        count = Curve.objects.count()
        self.assertEqual(count, len(load_corpus()))
        self.assertIn('already seeded', run('seed_corpus'))
        self.assertEqual(Curve.objects.count(), count)

    def test_force_reseeds_without_duplicates(self):
        run('seed_corpus')
        run('seed_corpus', force=True)
        self.assertEqual(Curve.objects.count(), len(load_corpus()))

    def test_random_arrangements_are_deterministic(self):
        run('seed_corpus', random=3, seed=5)
        first = list(Curve.objects.filter(source='faker seed 5').values_list('name', 'lines'))
        self.assertEqual(len(first), 3)
        Curve.objects.filter(source='faker seed 5').delete()
        run('seed_corpus', random=3, seed=5, force=True)
        second = list(Curve.objects.filter(source='faker seed 5').values_list('name', 'lines'))
        self.assertEqual(first, second)
        for curve in Curve.objects.filter(source='faker seed 5'):
            self.assertTrue(3 <= len(curve.lines) <= 8)
            curve.to_spec().polynomial()


class ReportTests(TestCase):
    def test_stringify_keeps_booleans_and_none(self):
        self.assertEqual(stringify({'a': True, 'b': None, 'c': (1, 2)}), {'a': True, 'b': None, 'c': ['1', '2']})

    def test_refuted_detection(self):
        self.assertTrue(is_refuted({'theorems': [{'verdict': 'REFUTED'}]}))
        self.assertTrue(is_refuted({'exactness': {'passed': False}}))
        self.assertFalse(is_refuted({'theorems': [{'verdict': 'confirmed'}], 'timing': {'passed': False}}))

    def test_build_report_omits_empty_blocks(self):
        report = build_report('classify', 'c', 3, chern=None, classification={'kind': 'free'})
        self.assertEqual(set(report), {'schema', 'command', 'curve', 'degree', 'classification'})

    def test_render_is_stable(self):
        report = build_report('classify', 'c', 3, classification={'kind': 'free', 'mdr': '1', 'exponents': ['1', '1']})
        self.assertEqual(render_json(report), render_json(dict(reversed(list(report.items())))))
        self.assertIn('kind: free', render_text(report))


class ClassifyCommandTests(TestCase):
    def test_triangle_report(self):
        self.assertEqual(run_json('classify', 'triangle'), {
            'schema': '1',
            'command': 'classify',
            'curve': 'triangle',
            'degree': '3',
            'polynomial': 'x*y*z',
            'classification': {
                'kind': 'free',
                'exponents': ['1', '1'],
                'mdr': '1',
                'generator_degrees': ['1', '1'],
                'saito_constant': '3',
            },
            'chern': {'available': True, 'rank': '2', 'c1': '-2', 'c2': '1'},
        })

    def test_four_generic_lines(self):
        report = run_json('classify', lines='x; y; z; x+y+z')
        cls = report['classification']
        self.assertEqual((cls['kind'], cls['exponents'], cls['level'], cls['nu']),
                         ('plus_one_generated', ['2', '2'], '2', '1'))
        self.assertEqual(report['chern']['c2'], '3')

    def test_smooth_conic(self):
        cls = run_json('classify', poly='x^2+y^2+z^2')['classification']
        self.assertEqual((cls['kind'], cls['exponents'], cls['level']), ('plus_one_generated', ['1', '1'], '1'))

    def test_text_output(self):
        out = run('classify', 'pencil')
        self.assertIn('kind: free', out)
        self.assertIn('exponents: (0, 2)', out)
        self.assertTrue(out.strip().endswith('ok'))

    def test_report_is_deterministic(self):
        self.assertEqual(run_json('classify', 'four_generic'), run_json('classify', 'four_generic'))

    def test_save_archives_the_report(self):
        run('classify', 'triangle', save=True)
        report = Report.objects.get()
        self.assertEqual((report.command, report.curve_name, report.refuted), ('classify', 'triangle', False))


class ExitCodeTests(TestCase):
    def assertExit(self, code, command, *args, **options):
        with self.assertRaises(CommandError) as cm:
            run(command, *args, **options)
        self.assertEqual(cm.exception.returncode, code)

    def test_parse_error(self):
        self.assertExit(1, 'classify', poly='x^2+y')

    def test_non_reduced(self):
        self.assertExit(2, 'classify', poly='x^2*y')

    def test_proportional_lines_are_non_reduced(self):
        self.assertExit(2, 'classify', lines='1 0 0; 2 0 0; 0 1 0')
        self.assertExit(2, 'splitting', lines='x; y; -3*y')

    def test_bound_below_the_degree(self):
        self.assertExit(1, 'classify', poly='x*y*z*(x+y+z)', bound=2)
        self.assertExit(1, 'scan', 'triangle', bound=1)

    def test_too_many_sampled_lines(self):
        with self.settings(CURVAS={**settings.CURVAS, 'LINE_COEFF_BOUND': 0}):
            self.assertExit(1, 'scan', 'triangle', samples=3)

    def test_unsupported_classification(self):
        self.assertExit(3, 'splitting', lines='x;y;z;x+y+z;x+2*y+3*z')

    def test_no_component_to_delete(self):
        self.assertExit(4, 'scan', 'smooth_conic', mode='deletion')

    def test_two_curve_sources(self):
        self.assertExit(1, 'classify', 'triangle', poly='x*y*z')

    def test_unknown_theorem(self):
        self.assertExit(1, 'verify_triple', 'triangle', line='x+y+z', theorems='addition,magic')


class SplittingCommandTests(TestCase):
    def test_generic_lines_of_a_triangle(self):
        report = run_json('splitting', 'triangle', generic=5, seed=7)
        self.assertEqual((report['generic']['a'], report['generic']['b']), ('1', '1'))
        self.assertTrue(all(b['coker_dim'] == '0' and b['allowed'] for b in report['splitting']))

    def test_four_lines_on_x_plus_y(self):
        report = run_json('splitting', 'four_generic', line=['x+y'])
        (block,) = report['splitting']
        self.assertEqual((block['a'], block['b'], block['coker_dim']), ('1', '2', '1'))
        self.assertTrue(block['allowed'] and block['yoshinaga'])

    def test_four_lines_generic_drop(self):
        report = run_json('splitting', 'four_generic', generic=3)
        self.assertEqual((report['generic']['a'], report['generic']['b']), ('1', '2'))
        self.assertTrue(report['generic']['even_degree_drop'])
        self.assertTrue(report['generic']['nu_identity'])
        self.assertNotIn('exponent_consistent', report['generic'])
        self.assertNotIn('jumping', report['generic'])

    def test_given_lines_are_checked_against_the_generic_type(self):
        report = run_json('splitting', 'four_generic', generic=3, line=['x+y', '1 2 5'])
        self.assertEqual(report['generic']['jumping'], [])
        self.assertEqual([b['jumping'] for b in report['splitting']], [False, False])


class VerifyTripleCommandTests(TestCase):
    def verdicts(self, report):
        return {t['theorem']: t['verdict'] for t in report['theorems']}

    def test_adding_z_to_two_lines(self):
        report = run_json('verify_triple', 'two_lines', line='z')
        self.assertEqual(report['triple']['direction'], 'addition')
        self.assertEqual(self.verdicts(report)['addition'], 'confirmed')
        addition = next(t for t in report['theorems'] if t['theorem'] == 'addition')
        self.assertEqual(addition['trace']['branch'], 'free')
        self.assertTrue(report['exactness']['passed'])
        self.assertTrue(report['chern_identity']['holds'])
        self.assertEqual(report['epsilon']['eps'], '0')

    def test_deleting_a_component_of_four_lines(self):
        report = run_json('verify_triple', 'four_generic', line='x', theorems='addition_converse')
        self.assertEqual(report['triple']['direction'], 'deletion')
        self.assertEqual(self.verdicts(report), {'addition_converse': 'confirmed'})

    def test_adding_x_plus_y_to_four_lines(self):
        report = run_json('verify_triple', 'four_generic', line='1 1 0', theorems='deletion_inverse,chern')
        self.assertEqual(self.verdicts(report), {'deletion_inverse': 'confirmed'})
        self.assertEqual(report['chern_identity']['residual'], '0')

    def test_eps_override_from_the_curve_file(self):
        report = run_json('verify_triple', 'five_lines', line='x+y', theorems='deletion')
        self.assertEqual(report['triple']['eps_source'], 'user_supplied')
        self.assertEqual(self.verdicts(report), {'deletion': 'confirmed'})


class ScanCommandTests(TestCase):
    def test_deletion_scan_of_near_pencil(self):
        report = run_json('scan', 'near_pencil', mode='deletion')
        summary = report['summary']
        self.assertEqual(summary['lines'], '4')
        self.assertEqual(summary['lines_confirmed'], '4')
        self.assertEqual(summary['refuted'], '0')
        self.assertEqual(summary['eps_zero'], '4')

    def test_addition_scan_of_triangle(self):
        report = run_json('scan', 'triangle', samples=6, seed=3)
        summary = report['summary']
        self.assertEqual(summary['refuted'], '0')
        self.assertEqual(summary['lines_confirmed'], summary['lines'])
        self.assertEqual(summary['certifying_lines'], summary['lines'])

    def test_spec_from_fields_error(self):
        with self.assertRaises(PolynomialParseError):
            spec_from_fields({'poly': 'x*y', 'lines': 'z'})
