from django.conf import settings

from chern.bundles import SplittingType
from cli.reports import build_report, chern_block, classification_block, splitting_block, stringify
from logmod.classification import CurveKind, classify
from polycore.polys import LinearForm
from restriction.splitting import allowed_pairs, generic_splitting, jumping_lines, splitting_type

from ._base import CurveCommand


class Command(CurveCommand):
    help = 'Splitting type of E_C on given lines or on seeded random lines, with the Yoshinaga cokernel'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--line', action='append', default=[],
                            help='Line as "a b c" or a linear form; repeatable')
        parser.add_argument('--generic', type=int, default=None, metavar='N',
                            help='Sample N seeded random lines for the generic splitting type')

    def run(self, spec, options):
        f = spec.polynomial()
        cls = classify(f, options['bound'])
        lines = [LinearForm.parse(text) for text in options['line']]
        trials = options['generic']
        if trials is None and not lines:
            trials = settings.CURVAS['GENERIC_TRIALS']

        if cls.kind == CurveKind.PLUS_ONE:
            allowed = allowed_pairs(cls)
        elif cls.kind == CurveKind.FREE:
            allowed = frozenset({SplittingType.of(*cls.exponents)})
        else:
            allowed = None

        generic = None
        generic_block = None
        blocks = []
        if trials:
            generic = generic_splitting(f, cls, trials, options['seed'])
            generic_block = stringify({
                'trials': trials,
                'a': generic.split.a,
                'b': generic.split.b,
                'even_degree_drop': generic.even_degree_drop,
                'nu_identity': chern_block(cls, f.degree)['c2'] == str(
                    generic.split.a * generic.split.b + getattr(cls, 'nu', 0)
                ),
            })
            if not lines:
                blocks = [splitting_block(r, allowed) for r in generic.results]
        jumps = None
        if generic is not None and lines:
            jumps = {r.line for r in jumping_lines(f, cls, lines, generic.split)}
            generic_block['jumping'] = [str(line) for line in lines if line in jumps]
        for line in lines:
            result = splitting_type(f, cls, line)
            blocks.append(splitting_block(result, allowed, None if jumps is None else line in jumps))

        return build_report(
            'splitting', spec.name, f.degree,
            classification=classification_block(cls),
            chern=chern_block(cls, f.degree),
            splitting=blocks,
            allowed=[list(stringify(p.as_tuple())) for p in sorted(allowed)] if allowed else None,
            generic=generic_block,
        )
