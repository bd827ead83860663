from cli.reports import build_report, chern_block, classification_block
from logmod.classification import classify

from ._base import CurveCommand


class Command(CurveCommand):
    help = 'Classify a curve as free, plus-one generated or other, with its Chern data'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--exhaustive', action='store_true',
                            help='Compare the Hilbert function over the whole window up to --bound')

    def run(self, spec, options):
        f = spec.polynomial()
        cls = classify(f, options['bound'], exhaustive=options['exhaustive'])
        return build_report(
            'classify', spec.name, f.degree,
            polynomial=str(f),
            classification=classification_block(cls),
            chern=chern_block(cls, f.degree),
        )
