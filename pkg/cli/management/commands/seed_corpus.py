from django.core.management.base import BaseCommand, CommandError
from faker import Faker

from cli.curves import CurveSpec, corpus_dir, load_corpus
from cli.models import Curve, SeederStatus
from logmod.syzygies import require_reduced
from polycore.exceptions import CurveError
from polycore.polys import LinearForm

MAX_RANDOM_LINES = 8


def random_arrangement(fake, name, coeff_bound=5):
    """3 to 8 distinct real lines with small integer coefficients."""
    count = fake.random_int(3, MAX_RANDOM_LINES)
    lines = []
    while len(lines) < count:
        coeffs = [fake.random_int(-coeff_bound, coeff_bound) for _ in range(3)]
        if not any(coeffs):
            continue
        line = LinearForm.of(*coeffs)
        if line not in lines:
            lines.append(line)
    return CurveSpec(name=name, lines=tuple(lines))


class Command(BaseCommand):
    help = 'Load the in-repo curve corpus into the database, optionally with random line arrangements'

    def add_arguments(self, parser):
        parser.add_argument('--random', type=int, default=0, help='Number of random arrangements to add')
        parser.add_argument('--seed', type=int, default=7, help='Faker seed for the random arrangements')
        parser.add_argument('--force', action='store_true', help='Seed again even if already done')

    def handle(self, *args, **options):
        status, created = SeederStatus.objects.get_or_create(name='seed_corpus')

        if status.executed and not options['force']:
            self.stdout.write(self.style.WARNING('Corpus already seeded.'))
        else:
            self.stdout.write(self.style.WARNING(f'Loading curves from {corpus_dir()}...'))
            try:
                specs = load_corpus()
            except CurveError as exc:
                raise CommandError(str(exc), returncode=exc.exit_code)
            for spec in specs:
                self.store(spec, source='corpus')
            status.executed = True
            status.save()
            self.stdout.write(self.style.SUCCESS(f'Loaded {len(specs)} corpus curves'))

        number = options['random']
        if number:
            self.seed_random(number, options['seed'], options['force'])

    def seed_random(self, number, seed, force):
        status, created = SeederStatus.objects.get_or_create(name=f'seed_corpus_random_{seed}_{number}')
        if status.executed and not force:
            self.stdout.write(self.style.WARNING(f'Random arrangements for seed {seed} already seeded.'))
            return

        fake = Faker()
        fake.seed_instance(seed)
        self.stdout.write(self.style.WARNING(f'Creating {number} random arrangements...'))
        for i in range(number):
            spec = random_arrangement(fake, f'random-{seed}-{i + 1}')
            require_reduced(spec.polynomial())
            self.store(spec, source=f'faker seed {seed}')

        status.executed = True
        status.save()
        self.stdout.write(self.style.SUCCESS(f'Successfully created {number} random arrangements!'))

    def store(self, spec, source):
        fields = spec.as_fields()
        Curve.objects.update_or_create(
            name=fields.pop('name'),
            defaults={**fields, 'source': source},
        )
