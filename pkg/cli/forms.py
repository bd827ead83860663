import re

from django import forms

from polycore.exceptions import PolynomialParseError
from polycore.polys import LinearForm

POLY_ALPHABET = re.compile(r'[\sxyz0-9+\-*/^().]*')
BIG_EXPONENT = re.compile(r'(\^|\*\*)\s*(\(|\d{3,})')
MAX_EXPRESSION = 4000
ENTRY_SEPARATOR = re.compile(r'[\n;]+')


class CurveSpecForm(forms.Form):
    """Validates a curve given as an expression or as a list of lines before any algebra runs."""
    name = forms.CharField(max_length=100, required=False)
    poly = forms.CharField(max_length=MAX_EXPRESSION, required=False)
    lines = forms.CharField(max_length=MAX_EXPRESSION, required=False)
    eps = forms.CharField(max_length=MAX_EXPRESSION, required=False)

    def clean_poly(self):
        poly = self.cleaned_data.get('poly', '')
        if not POLY_ALPHABET.fullmatch(poly):
            raise forms.ValidationError('Only digits, x, y, z, + - * / ^ and parentheses are allowed.')
        if BIG_EXPONENT.search(poly):
            raise forms.ValidationError('Exponents must be integer literals below 100.')
        return poly

    def clean_lines(self):
        lines = []
        for entry in ENTRY_SEPARATOR.split(self.cleaned_data.get('lines', '')):
            if not entry.strip():
                continue
            try:
                lines.append(LinearForm.parse(entry))
            except (PolynomialParseError, ValueError) as exc:
                raise forms.ValidationError(f'Bad line {entry.strip()!r}: {exc}')
        return lines

    def clean_eps(self):
        overrides = {}
        for entry in ENTRY_SEPARATOR.split(self.cleaned_data.get('eps', '')):
            if not entry.strip():
                continue
            line_text, sep, value = entry.partition('=')
            if not sep or not re.fullmatch(r'\s*[-+]?\d+\s*', value):
                raise forms.ValidationError(f'Expected "a b c = k", got {entry.strip()!r}')
            try:
                overrides[LinearForm.parse(line_text)] = int(value)
            except (PolynomialParseError, ValueError) as exc:
                raise forms.ValidationError(f'Bad eps line {line_text.strip()!r}: {exc}')
        return overrides

    def clean(self):
        cleaned = super().clean()
        has_poly = bool((cleaned.get('poly') or '').strip())
        has_lines = bool(cleaned.get('lines'))
        if 'poly' in self.errors or 'lines' in self.errors:
            return cleaned
        if has_poly == has_lines:
            raise forms.ValidationError('Give exactly one of "poly" or "lines".')
        return cleaned
