import json
from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, TestCase

from shifts.constructions.checks import Check
from shifts.engine.exceptions import BoundViolation
from shifts.forms import RunConfigForm
from shifts.models import VerificationRun
from shifts.reports import Report, encode
from shifts.templatetags.shift_tags import as_float, rational

from .oracles import golden_mean


class EncodeTestCase(SimpleTestCase):

    def test_rationals_and_numpy_values(self):
        self.assertEqual(encode(Fraction(2, 4)), {'num': 1, 'den': 2})
        self.assertEqual(encode({'a': (np.int64(3), np.bool_(True))}), {'a': [3, True]})
        self.assertEqual(encode(frozenset({2, 1})), [1, 2])

    def test_checks(self):
        encoded = encode(Check.less('gap', Fraction(1, 3), Fraction(1, 2)))
        self.assertEqual(encoded['relation'], '<')
        self.assertTrue(encoded['ok'])
        self.assertEqual(encoded['rhs'], {'num': 1, 'den': 2})


class ReportTestCase(SimpleTestCase):

    def setUp(self):
        self.report = Report(command='trace', action='best', seed=7, result={'cost': Fraction(1, 2)},
                             checks=[Check.at_most('bound', 2, 1)])

    def test_json_is_sorted_and_exact(self):
        text = self.report.to_json()
        self.assertEqual(text, json.dumps(json.loads(text), sort_keys=True, indent=2) + '\n')
        document = json.loads(text)
        self.assertEqual(document['result']['cost'], {'num': 1, 'den': 2})
        self.assertEqual(document['tool'], 'shifts')
        self.assertNotIn('error', document)

    def test_failed_checks(self):
        self.assertEqual([c.name for c in self.report.failed_checks], ['bound'])
        violation = self.report.failed_checks[0].violation()
        self.assertIsInstance(violation, BoundViolation)

    def test_text_rendering(self):
        text = self.report.render('text')
        self.assertIn('cost: 1/2 (~0.5)', text)
        self.assertIn('[FAIL] bound: 2 <= 1', text)

    def test_dot_falls_back_to_json(self):
        self.assertEqual(self.report.render('dot'), self.report.to_json())
        self.report.graph = golden_mean()
        self.assertIn('0 -> 1 [label="1"];', self.report.render('dot'))


class TemplateTagsTestCase(SimpleTestCase):

    def test_rational(self):
        self.assertEqual(rational({'num': 3, 'den': 1}), '3')
        self.assertEqual(rational(Fraction(2, 3)), '2/3')
        self.assertEqual(rational('0101'), '0101')

    def test_as_float(self):
        self.assertEqual(as_float({'num': 1, 'den': 3}), '0.333333')
        self.assertEqual(as_float(5), '')


class RunConfigFormTestCase(SimpleTestCase):

    def test_cap_overrides(self):
        form = RunConfigForm(data={'max_words': 50, 'format': 'text'})
        self.assertTrue(form.is_valid())
        self.assertEqual(form.cleaned_data['format'], 'text')
        self.assertEqual(form.cap_overrides()['SHIFTS_MAX_WORDS'], 50)
        self.assertIsNone(form.cap_overrides()['SHIFTS_MAX_PREFIX'])

    def test_invalid_values(self):
        form = RunConfigForm(data={'seed': -1, 'format': 'pdf'})
        self.assertFalse(form.is_valid())
        self.assertIn('seed', form.error_text())
        self.assertIn('format', form.error_text())


class VerificationRunTestCase(TestCase):

    def test_failed_checks_from_report(self):
        report = Report(command='tower', action='verify', checks=[Check.truth('a', True), Check.truth('b', False)])
        run = VerificationRun.objects.create(command='tower', action='verify', report=report.as_dict(),
                                             status='violated', exit_code=1)
        self.assertEqual(run.failed_checks, ['b'])
        self.assertIn('tower verify', str(run))
        self.assertIn('violated', str(run))
