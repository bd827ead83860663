import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import TestCase

from cli.curves import MAX_FILE_BYTES, load_curve_file
from cli.forms import CurveSpecForm
from polycore.exceptions import PolynomialParseError
from polycore.polys import parse_poly


class ExpressionInjectionTests(TestCase):
    HOSTILE = (
        '__import__("os").system("true")',
        'x.__class__',
        'eval("x")',
        'lambda: x',
        'x if y else z',
        'open("/etc/passwd")',
        'x*y; import os',
        "Symbol('w')",
    )

    def test_parser_rejects_code(self):
        for text in self.HOSTILE:
            with self.assertRaises(PolynomialParseError, msg=text):
                parse_poly(text)

    def test_form_rejects_code(self):
        for text in self.HOSTILE:
            self.assertFalse(CurveSpecForm({'poly': text}).is_valid(), text)

    def test_command_exits_with_parse_error(self):
        with self.assertRaises(CommandError) as cm:
            call_command('classify', poly='__import__("os")', stdout=StringIO())
        self.assertEqual(cm.exception.returncode, 1)


class ResourceExhaustionTests(TestCase):
    def test_huge_exponents_are_refused_before_expansion(self):
        for text in ('x^999', 'x**1000000', 'x^(10^9)', '(x+y)**(2**64)'):
            form = CurveSpecForm({'poly': text})
            self.assertFalse(form.is_valid(), text)
            self.assertIn('poly', form.errors)

    def test_long_expression_is_refused(self):
        form = CurveSpecForm({'poly': '+'.join(['x'] * 3000)})
        self.assertFalse(form.is_valid())

    def test_oversized_curve_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'big.curve'
            path.write_text('# ' + 'a' * MAX_FILE_BYTES + '\npoly: x*y\n', encoding='utf-8')
            with self.assertRaises(PolynomialParseError):
                load_curve_file(path)

    def test_non_utf8_curve_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'latin.curve'
            path.write_bytes(b'name: caf\xe9\npoly: x*y\n')
            with self.assertRaises(PolynomialParseError):
                load_curve_file(path)


class LineInputTests(TestCase):
    def test_lines_reject_expressions(self):
        for text in ('x*y', '0 0 0', '1 2', '__import__("os")'):
            self.assertFalse(CurveSpecForm({'lines': text}).is_valid(), text)

    def test_eps_requires_integer(self):
        self.assertFalse(CurveSpecForm({'lines': 'x; y', 'eps': 'x = 1.5'}).is_valid())
