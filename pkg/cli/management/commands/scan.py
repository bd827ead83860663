from collections import Counter
from concurrent.futures import ThreadPoolExecutor

from django.conf import settings

from cli.reports import build_report, classification_block, stringify
from logmod.classification import classify
from polycore.exceptions import LineComponentError, UnsupportedClassificationError
from polycore.polys import linear_components
from triples.deletion import delete_line, make_triple
from triples.theorems import (
    Mode,
    candidate_lines,
    characterize_freeness,
    shape,
    solve_epsilon,
    verify_addition,
    verify_addition_converse,
    verify_deletion,
    verify_deletion_inverse,
)

from ._base import CurveCommand


def addition_scan_row(f, line):
    t = make_triple(f, line)
    reports = [verify_addition(t), verify_deletion_inverse(t)]
    return {
        'line': str(line),
        'card': t.card,
        'C': shape(classify(t.f)),
        'branch': reports[0].trace.get('branch'),
        'verdicts': {str(r.theorem): str(r.verdict) for r in reports},
        'theorems': [r.as_dict() for r in reports],
    }


def deletion_scan_row(f, line):
    t = delete_line(f, line)
    reports = [verify_deletion(t), verify_addition_converse(t), characterize_freeness(f, Mode.DELETION, line=line)]
    row = {
        'line': str(line),
        'card': t.card,
        'C_prime': shape(classify(t.f_prime)),
        'branch': reports[0].trace.get('branch'),
        'verdicts': {str(r.theorem): str(r.verdict) for r in reports},
        'theorems': [r.as_dict() for r in reports],
    }
    try:
        row['eps_solved'] = solve_epsilon(t).eps
    except UnsupportedClassificationError:
        row['eps_solved'] = None
    return row


class Command(CurveCommand):
    help = 'Run the addition or deletion theorems over many lines and tabulate the verdicts'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--mode', choices=Mode.values, default=Mode.ADDITION)
        parser.add_argument('--samples', type=int, default=20, help='Random lines in addition mode')
        parser.add_argument('--workers', type=int, default=None, help='Threads (default CURVAS_SCAN_WORKERS)')

    def run(self, spec, options):
        f = spec.polynomial()
        cls = classify(f, options['bound'])
        workers = options['workers'] or settings.CURVAS['SCAN_WORKERS']

        if options['mode'] == Mode.ADDITION:
            lines = candidate_lines(f, options['samples'], options['seed'])
            row_for = addition_scan_row
            characterization = characterize_freeness(
                f, Mode.ADDITION, samples=options['samples'], seed=options['seed'], workers=workers,
            )
        else:
            lines = linear_components(f)
            if not lines:
                raise LineComponentError(f'{f} has no linear component to delete')
            row_for = deletion_scan_row
            characterization = None

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(lambda l: row_for(f, l), lines))
        else:
            rows = [row_for(f, l) for l in lines]

        verdicts = Counter(v for row in rows for v in row['verdicts'].values())
        branches = Counter(row['branch'] for row in rows if row['branch'])
        summary = {
            'lines': len(rows),
            'lines_confirmed': sum(
                1 for row in rows
                if 'REFUTED' not in row['verdicts'].values() and 'confirmed' in row['verdicts'].values()
            ),
            'confirmed': verdicts['confirmed'],
            'hypothesis_not_met': verdicts['hypothesis_not_met'],
            'refuted': verdicts['REFUTED'],
            'branch_free': branches['free'],
            'branch_plus_one': branches['plus_one'],
        }
        if characterization is not None:
            summary['certifying_lines'] = characterization.trace['certifying_lines']
        if options['mode'] == Mode.DELETION:
            summary['eps_zero'] = sum(1 for row in rows if row['eps_solved'] == 0)

        return build_report(
            'scan', spec.name, f.degree,
            mode=options['mode'],
            classification=classification_block(cls),
            scan=stringify(rows),
            theorems=[stringify(characterization.as_dict())] if characterization is not None else None,
            summary=stringify(summary),
        )
