import logging
import time

from django.core.management.base import BaseCommand, CommandError

from cli.curves import resolve_curve, spec_from_fields
from cli.models import Report
from cli.reports import is_refuted, render_json, render_text
from polycore.exceptions import CurveError, InternalInconsistencyError

logger = logging.getLogger(__name__)

REFUTED_EXIT = InternalInconsistencyError.exit_code


class CurveCommand(BaseCommand):
    """A command that reads one curve and prints one report.

    Subclasses implement run(spec, options) and return a report dict.
    """

    def add_arguments(self, parser):
        parser.add_argument('curve', nargs='?', help='Curve file, corpus name or stored curve name')
        parser.add_argument('--poly', help='Curve equation, e.g. "x*y*z"')
        parser.add_argument('--lines', help='Arrangement: line triples or linear forms separated by ";"')
        parser.add_argument('--eps', type=int, default=None, help='eps(C\', L) for the triple')
        parser.add_argument('--bound', type=int, default=None, help='Degree bound B (default 2*deg)')
        parser.add_argument('--seed', type=int, default=None, help='Seed for sampled lines')
        parser.add_argument('--format', choices=['text', 'json'], default='text')
        parser.add_argument('--save', action='store_true', help='Archive the report in the database')

    def curve_spec(self, options):
        given = [o for o in ('curve', 'poly', 'lines') if options.get(o)]
        if len(given) != 1:
            raise CommandError('Give exactly one of CURVE, --poly or --lines.', returncode=1)
        if options.get('curve'):
            return resolve_curve(options['curve'])
        return spec_from_fields({
            'name': (options['poly'] or options['lines'])[:100],
            'poly': options.get('poly') or '',
            'lines': options.get('lines') or '',
        })

    def handle(self, *args, **options):
        started = time.perf_counter()
        try:
            spec = self.curve_spec(options)
            report = self.run(spec, options)
        except CurveError as exc:
            logger.debug(f'{type(exc).__name__}: {exc}')
            raise CommandError(f'{type(exc).__name__}: {exc}', returncode=exc.exit_code)

        report['timing'] = {'seconds': f'{time.perf_counter() - started:.3f}'}
        refuted = is_refuted(report)
        if options.get('save'):
            Report.objects.create(
                command=report['command'], curve_name=report['curve'], payload=report, refuted=refuted,
            )
        if options['format'] == 'json':
            self.stdout.write(render_json(report))
        else:
            self.stdout.write(render_text(report))

        if refuted:
            raise CommandError('A verified statement was REFUTED; see the report.', returncode=REFUTED_EXIT)
        if options['format'] == 'text':
            self.stdout.write(self.style.SUCCESS('ok'))

    def run(self, spec, options):
        raise NotImplementedError
