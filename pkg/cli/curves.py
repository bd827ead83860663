"""Curve specifications and the in-repo curve file format.

A curve file is UTF-8 text with key: value headers. `#` starts a comment.

    name: near_pencil
    lines:
      1 0 0
      0 1 0
      x + y
    eps: 0 0 1 = 0

Either `poly: <expression>` or a `lines:` list is given, never both. Entries
of `lines:` and `eps:` go on the following lines or after the colon,
separated by `;`.
"""
import logging
import re
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path

from django.conf import settings

from logmod.syzygies import require_reduced
from polycore.exceptions import PolynomialParseError
from polycore.polys import parse_curve

from .forms import CurveSpecForm

logger = logging.getLogger(__name__)

HEADER = re.compile(r'^(name|poly|lines|eps)\s*:(.*)$')
MAX_FILE_BYTES = 64 * 1024


@dataclass(frozen=True)
class CurveSpec:
    name: str
    poly: str = ''
    lines: tuple = ()
    eps_overrides: dict = field(default_factory=dict, hash=False, compare=False)

    @property
    def is_arrangement(self):
        return bool(self.lines)

    def polynomial(self):
        """The reduced defining polynomial; a line product for arrangements."""
        if self.lines:
            f = reduce(lambda acc, g: acc * g, (l.as_poly() for l in self.lines))
        else:
            f = parse_curve(self.poly)
        return require_reduced(f)

    def eps_for(self, line):
        return self.eps_overrides.get(line)

    def as_fields(self):
        return {
            'name': self.name,
            'kind': 'lines' if self.lines else 'poly',
            'expression': self.poly,
            'lines': [list(l.as_triple()) for l in self.lines],
            'eps_overrides': {' '.join(l.as_triple()): v for l, v in self.eps_overrides.items()},
        }


def spec_from_fields(data):
    """Validate raw name/poly/lines/eps strings through CurveSpecForm."""
    form = CurveSpecForm(data)
    if not form.is_valid():
        problems = '; '.join(
            f'{key}: {" ".join(messages)}' if key != '__all__' else ' '.join(messages)
            for key, messages in form.errors.items()
        )
        raise PolynomialParseError(f'invalid curve {data.get("name") or "<unnamed>"}: {problems}')
    cleaned = form.cleaned_data
    return CurveSpec(
        name=cleaned['name'] or 'curve',
        poly=cleaned['poly'].strip(),
        lines=tuple(cleaned['lines']),
        eps_overrides=cleaned['eps'],
    )


def parse_curve_text(text, default_name=''):
    fields = {'name': default_name, 'poly': '', 'lines': [], 'eps': []}
    current = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        match = HEADER.match(line)
        if match:
            key, value = match.group(1), match.group(2).strip()
            if key in ('lines', 'eps'):
                if value:
                    fields[key].append(value)
                current = key
            else:
                fields[key] = value
                current = None
        elif current:
            fields[current].append(line)
        else:
            raise PolynomialParseError(f'line {number}: expected "key: value", got {line!r}')
    return spec_from_fields({
        'name': fields['name'],
        'poly': fields['poly'],
        'lines': '\n'.join(fields['lines']),
        'eps': '\n'.join(fields['eps']),
    })


def load_curve_file(path):
    path = Path(path)
    if path.stat().st_size > MAX_FILE_BYTES:
        raise PolynomialParseError(f'{path} is larger than {MAX_FILE_BYTES} bytes')
    try:
        text = path.read_text(encoding='utf-8')
    except UnicodeDecodeError as exc:
        raise PolynomialParseError(f'{path} is not UTF-8') from exc
    return parse_curve_text(text, default_name=path.stem)


def corpus_dir():
    return Path(settings.CURVAS['CORPUS_DIR'])


def load_corpus(directory=None):
    directory = Path(directory) if directory else corpus_dir()
    return [load_curve_file(p) for p in sorted(directory.glob('*.curve'))]


def resolve_curve(reference):
    """A curve file path, a corpus name or the name of a stored Curve."""
    from .models import Curve

    path = Path(reference)
    if path.suffix == '.curve' and path.is_file():
        return load_curve_file(path)
    candidate = corpus_dir() / f'{reference}.curve'
    if candidate.is_file():
        return load_curve_file(candidate)
    stored = Curve.objects.filter(name=reference).first() or Curve.objects.filter(slug=reference).first()
    if stored:
        return stored.to_spec()
    raise PolynomialParseError(f'unknown curve {reference!r}: not a file, corpus entry or stored curve')
