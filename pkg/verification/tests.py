import io
import json
import math
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from collectorlab.cli import run

from .models import EXACT, CheckResult, CheckStatus, VerifyReport
from .services import VerificationSuite

EXACT_CHECKS = [
    'stirling_recurrence_vs_explicit',
    'stirling_second_column',
    'stirling_bell_recurrence',
    'enumeration_oracle',
    'pmf_routes_exact',
    'conservation_support',
    'mean_identity',
    'variance_identity',
    'genfun_routes',
    'ansatz_coefficients',
]


def failing(name):
    return CheckResult(name=name, status=CheckStatus.FAIL, deviation='mismatch at n=3')


class VerifyReportTests(SimpleTestCase):
    def test_overall_pass(self):
        report = VerifyReport(checks=(CheckResult(name='a'), CheckResult(name='b', deviation=1e-12)))
        self.assertTrue(report.passed)
        self.assertEqual(report.overall, CheckStatus.PASS)

    def test_one_failure_fails_the_report(self):
        report = VerifyReport(checks=(CheckResult(name='a'), failing('b')))
        self.assertFalse(report.passed)
        self.assertEqual(report.overall, CheckStatus.FAIL)


class VerificationSuiteTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        suite = VerificationSuite(m_max=6, n_max=12, trials=20_000, seed=7, stirling_n_max=60)
        cls.report = suite.get_all_checks()
        cls.checks = {check.name: check for check in cls.report.checks}

    def test_everything_passes(self):
        failed = [check.name for check in self.report.checks if not check.passed]
        self.assertEqual(failed, [])

    def test_exact_checks_have_zero_deviation(self):
        for name in EXACT_CHECKS:
            self.assertEqual(self.checks[name].deviation, EXACT, name)

    def test_float_checks_report_a_deviation(self):
        self.assertLess(self.checks['float_dp_accuracy'].deviation, 1e-10)
        self.assertLess(self.checks['completion_mean'].deviation, 1e-6)
        self.assertTrue(math.isfinite(self.checks['egf_closed_forms'].deviation))

    def test_montecarlo_cases_within_envelope(self):
        check = self.checks['montecarlo_fit']
        self.assertEqual(check.scope['cases'], '2:3 5:10')
        self.assertLess(check.deviation, 5 / math.sqrt(20_000))

    def test_montecarlo_skipped(self):
        report = VerificationSuite(m_max=2, n_max=3, montecarlo=False).get_all_checks()
        self.assertNotIn('montecarlo_fit', [check.name for check in report.checks])

    def test_montecarlo_cases_limited_by_m_max(self):
        check = VerificationSuite(m_max=3, n_max=3, trials=2000, seed=1).check_montecarlo_fit()
        self.assertEqual(check.scope['cases'], '2:3')

    def test_tolerance_floor(self):
        self.assertEqual(VerificationSuite(trials=10 ** 8).montecarlo_tolerance(), 5e-3)
        self.assertEqual(VerificationSuite(trials=10_000).montecarlo_tolerance(), 0.05)

    def test_mismatch_is_reported(self):
        suite = VerificationSuite(m_max=3, n_max=4)
        with mock.patch('verification.services.expected_distinct', return_value=-1):
            check = suite.check_mean_identity()
        self.assertEqual(check.status, CheckStatus.FAIL)
        self.assertEqual(check.deviation, 'mismatch at pmf m=1 n=0')


class VerifyCommandTests(SimpleTestCase):
    args = ('verify', '--m-max', '4', '--n-max', '8', '--stirling-n-max', '20', '--skip-montecarlo')

    def test_table_output(self):
        out = io.StringIO()
        call_command(*self.args, stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0].split(), ['check', 'scope', 'status', 'deviation'])
        self.assertTrue(lines[2].startswith('stirling_recurrence_vs_explicit'))
        self.assertEqual(lines[-1], 'overall: pass')

    def test_json_output(self):
        out = io.StringIO()
        call_command(*self.args, '--format', 'json', stdout=out)
        document = json.loads(out.getvalue())
        self.assertEqual(document['overall'], 'pass')
        self.assertEqual(len(document['checks']), 14)
        first = document['checks'][0]
        self.assertEqual(first, {
            'check': 'stirling_recurrence_vs_explicit',
            'scope': 'n_max=20',
            'status': 'pass',
            'deviation': 'exact',
        })

    def test_csv_output(self):
        out = io.StringIO()
        call_command(*self.args, '--format', 'csv', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 'check,scope,status,deviation')
        self.assertEqual(lines[1], 'stirling_recurrence_vs_explicit,n_max=20,pass,exact')

    def test_output_is_deterministic(self):
        first, second = io.StringIO(), io.StringIO()
        args = ('verify', '--m-max', '3', '--n-max', '5', '--trials', '3000', '--seed', '11',
                '--stirling-n-max', '10', '--format', 'csv')
        call_command(*args, stdout=first)
        call_command(*args, '--workers', '2', stdout=second)
        self.assertEqual(first.getvalue(), second.getvalue())

    def test_failed_check_exits_1(self):
        with mock.patch.object(VerificationSuite, 'check_stirling_second_column',
                               return_value=failing('stirling_second_column')):
            out = io.StringIO()
            with self.assertRaises(CommandError) as ctx:
                call_command(*self.args, stdout=out)
        self.assertEqual(ctx.exception.returncode, 1)
        self.assertIn('overall: fail', out.getvalue())

    def test_run_exit_codes(self):
        with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
            self.assertEqual(run(list(self.args)), 0)
            self.assertEqual(run(['verify', '--m-max', '0']), 2)
            with mock.patch.object(VerificationSuite, 'check_conservation_support',
                                   return_value=failing('conservation_support')):
                self.assertEqual(run(list(self.args)), 1)

    def test_unknown_subcommand_exits_2(self):
        err = io.StringIO()
        with redirect_stdout(io.StringIO()), redirect_stderr(err):
            self.assertEqual(run(['collect']), 2)
        self.assertIn('usage:', err.getvalue())
