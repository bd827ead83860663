from django.core.management.base import CommandError

from chern.bundles import chern_of_classification, triple_c2_identity
from cli.reports import build_report, stringify
from logmod.classification import CurveKind, classify
from polycore.exceptions import UnsupportedClassificationError
from polycore.polys import LinearForm, restrict_to_line
from triples.deletion import delete_line, make_triple
from triples.exactness import check_exact_sequence
from triples.theorems import (
    Theorem,
    solve_epsilon,
    verify_addition,
    verify_addition_converse,
    verify_deletion,
    verify_deletion_inverse,
    verify_equivalence,
)

from ._base import CurveCommand

EXTRA_CHECKS = ('exact_sequence', 'chern', 'epsilon')
CHOICES = tuple(Theorem.values[:5]) + EXTRA_CHECKS


class Command(CurveCommand):
    help = ('Build the triple (C, C\', C\'\') for a line and verify the addition-deletion theorems. '
            'If the line is a component of the curve it is deleted, otherwise it is added.')

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--line', required=True, help='Line as "a b c" or a linear form')
        parser.add_argument('--theorems', default=','.join(CHOICES),
                            help=f'Comma-separated subset of {", ".join(CHOICES)}')
        parser.add_argument('--d2', type=int, default=None,
                            help='d2 for the equivalence theorem (default |C\'\'| + eps - 1)')

    def run(self, spec, options):
        selected = [t.strip() for t in options['theorems'].split(',') if t.strip()]
        unknown = sorted(set(selected) - set(CHOICES))
        if unknown:
            raise CommandError(f'Unknown theorems: {", ".join(unknown)}', returncode=1)

        f = spec.polynomial()
        line = LinearForm.parse(options['line'])
        eps = options['eps'] if options['eps'] is not None else spec.eps_for(line)
        if restrict_to_line(f, line).is_zero:
            direction = 'deletion'
            t = delete_line(f, line, eps)
        else:
            direction = 'addition'
            t = make_triple(f, line, eps)

        verifiers = {
            Theorem.ADDITION: lambda: verify_addition(t),
            Theorem.DELETION: lambda: verify_deletion(t),
            Theorem.ADDITION_CONVERSE: lambda: verify_addition_converse(t),
            Theorem.DELETION_INVERSE: lambda: verify_deletion_inverse(t),
            Theorem.EQUIVALENCE: lambda: verify_equivalence(
                t, options['d2'] if options['d2'] is not None else t.count - 1,
            ),
        }
        theorems = [stringify(verifiers[name]().as_dict()) for name in verifiers if name in selected]

        return build_report(
            'verify_triple', spec.name, f.degree,
            triple=stringify({
                'direction': direction,
                'C': str(t.f),
                'C_prime': str(t.f_prime),
                'line': str(t.line),
                'card': t.card,
                'eps': t.eps,
                'eps_source': t.eps_source,
            }),
            theorems=theorems,
            exactness=(stringify(check_exact_sequence(t, options['bound']).as_dict())
                       if 'exact_sequence' in selected else None),
            chern_identity=self.chern_identity(t) if 'chern' in selected else None,
            epsilon=self.epsilon(t) if 'epsilon' in selected else None,
        )

    def chern_identity(self, t):
        cls, cls_prime = classify(t.f), classify(t.f_prime)
        if CurveKind.OTHER in (cls.kind, cls_prime.kind):
            return {'available': False, 'reason': 'both curves must be free or plus-one generated'}
        identity = triple_c2_identity(
            chern_of_classification(cls, t.f.degree),
            chern_of_classification(cls_prime, t.f_prime.degree),
            t.card, t.eps,
        )
        return stringify({
            'available': True,
            'holds': identity.holds,
            'residual': identity.residual,
            'c1_holds': identity.c1_holds,
            'predicted_c2': identity.predicted.c2,
        })

    def epsilon(self, t):
        try:
            solution = solve_epsilon(t)
        except UnsupportedClassificationError as exc:
            return {'available': False, 'reason': str(exc)}
        return stringify({
            'available': True,
            'eps': solution.eps,
            'route': solution.route,
            'matches_triple': solution.eps == t.eps,
        })
