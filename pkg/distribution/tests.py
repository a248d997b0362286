import io
import json
import math
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from django.conf import settings
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase, override_settings

from collectorlab.cli import run
from numeric_core.exceptions import DomainError, TableTooLargeError

from .models import Route
from .services import (
    closed_form_pmf,
    closed_form_pmf_rude,
    closed_form_row,
    completion_stats,
    dp_pmf,
    enumerate_pmf,
    expected_distinct,
    float_closed_form,
    float_pmf,
    iter_dp_counts,
    iter_float_rows,
    mean_coupons,
    variance_coupons,
)


def harmonic_mean(m):
    return sum(m / j for j in range(1, m + 1))


class MasterEquationTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(dp_pmf(2, 2).p[2][1], Fraction(1, 2))
        for m in range(1, 8):
            self.assertEqual(dp_pmf(m, 1).p[1][1], 1)
        self.assertEqual(dp_pmf(3, 0).p[0], (1, 0, 0, 0))

    def test_conservation_and_support(self):
        for m in range(1, 9):
            table = dp_pmf(m, 16)
            for n in range(17):
                row = table.p[n]
                self.assertEqual(sum(row), 1, msg=f"m={m} n={n}")
                for k in range(m + 1):
                    outside = k > min(n, m) or (k == 0 and n >= 1)
                    self.assertEqual(row[k] == 0, outside, msg=f"m={m} n={n} k={k}")

    def test_monotone_absorption(self):
        for m in range(1, 9):
            cdf = dp_pmf(m, 40).completion_cdf()
            for n in range(1, 41):
                self.assertGreaterEqual(cdf[n], cdf[n - 1])
                self.assertLessEqual(1 - cdf[n], m * (1 - Fraction(1, m)) ** n)

    def test_table_cap(self):
        with override_settings(COLLECTOR_LAB={'MAX_TABLE_CELLS': 10}):
            with self.assertRaises(TableTooLargeError):
                dp_pmf(4, 4)
            with self.assertRaises(TableTooLargeError):
                float_pmf(4, 4)

    def test_rejects_bad_m(self):
        with self.assertRaises(DomainError):
            dp_pmf(0, 3)


class ClosedFormTests(SimpleTestCase):
    def test_binomial_form_examples(self):
        self.assertEqual(closed_form_pmf(3, 3, 3), Fraction(2, 9))
        self.assertEqual(closed_form_pmf(2, 3, 2), Fraction(3, 4))
        for m in range(1, 7):
            for n in range(1, 9):
                self.assertEqual(closed_form_pmf(m, n, 1), Fraction(1, m ** (n - 1)))

    def test_product_form_examples(self):
        self.assertEqual(closed_form_pmf_rude(3, 3, 2), Fraction(2, 3))
        self.assertEqual(closed_form_pmf_rude(2, 2, 2), Fraction(1, 2))

    def test_forms_agree(self):
        for m in range(1, 13):
            for n in range(1, 25):
                for k in range(1, m + 1):
                    self.assertEqual(closed_form_pmf_rude(m, n, k), closed_form_pmf(m, n, k))

    def test_rejects_k_zero(self):
        with self.assertRaises(DomainError):
            closed_form_pmf(3, 2, 0)
        with self.assertRaises(DomainError):
            closed_form_pmf_rude(3, 2, 0)
        with self.assertRaises(DomainError):
            closed_form_pmf(3, 2, 4)

    def test_route_equivalence(self):
        for m in range(1, 9):
            table = dp_pmf(m, 16)
            for n in range(17):
                self.assertEqual(closed_form_row(m, n, Route.SIMPLIFIED).probabilities, table.p[n])
                self.assertEqual(closed_form_row(m, n, Route.RUDE).probabilities, table.p[n])
                self.assertEqual(closed_form_row(m, n, Route.DP).probabilities, table.p[n])

    def test_enumeration_oracle(self):
        for m in range(1, 5):
            table = dp_pmf(m, 8)
            for n in range(9):
                oracle = enumerate_pmf(m, n).probabilities
                self.assertEqual(table.p[n], oracle, msg=f"m={m} n={n}")
                self.assertEqual(closed_form_row(m, n, Route.RUDE).probabilities, oracle)
                self.assertEqual(closed_form_row(m, n, Route.SIMPLIFIED).probabilities, oracle)


class MomentTests(SimpleTestCase):
    def test_mean_examples(self):
        self.assertEqual(mean_coupons(2, 2), Fraction(3, 2))
        self.assertEqual(mean_coupons(5, 0), 0)
        self.assertEqual(mean_coupons(5, 1), 1)

    def test_mean_identity(self):
        for m in range(1, 13):
            for n in range(25):
                mean = mean_coupons(m, n)
                self.assertEqual(mean, expected_distinct(m, n))
                self.assertEqual((mean * m ** n).denominator, 1)

    def test_variance(self):
        # two draws from two types: X is 1 or 2 with probability 1/2 each
        self.assertEqual(variance_coupons(2, 2), Fraction(1, 4))
        for m in range(1, 8):
            for n in range(12):
                q1 = (1 - Fraction(1, m)) ** n
                q2 = (1 - Fraction(2, m)) ** n
                closed = m * (m - 1) * q2 + m * q1 - m * m * q1 * q1
                self.assertEqual(variance_coupons(m, n), closed)


class FloatBackendTests(SimpleTestCase):
    def test_examples(self):
        self.assertAlmostEqual(float_pmf(2, 2).p[2, 2], 0.5, delta=1e-15)
        self.assertEqual(float_pmf(1, 5).p[5, 1], 1.0)

    def test_streamed_rows_match_table(self):
        table = float_pmf(7, 30)
        for n, row in iter_float_rows(7, 30):
            self.assertEqual(row.tolist(), table.p[n].tolist())

    def test_row_sums(self):
        table = float_pmf(50, 5000)
        self.assertLessEqual(float(abs(table.p.sum(axis=1) - 1.0).max()), 1e-12)

    def test_elementwise_accuracy(self):
        for m in (1, 2, 3, 7, 20, 50):
            table = float_pmf(m, 2000)
            worst = 0.0
            for n, counts in iter_dp_counts(m, 2000):
                total = m ** n
                for k, count in enumerate(counts):
                    worst = max(worst, abs(table.p[n, k] - count / total))
            self.assertLessEqual(worst, 1e-10, msg=f"m={m}")

    def test_closed_form_exact_cases(self):
        report = float_closed_form(2, 3, 2)
        self.assertAlmostEqual(report.value, 0.75, delta=1e-15)
        self.assertLess(report.cancellation_ratio, 10)
        self.assertFalse(report.overflowed)
        report = float_closed_form(1, 1, 1)
        self.assertEqual(report.value, 1.0)

    def test_closed_form_loses_significance(self):
        report = float_closed_form(20, 400, 20)
        self.assertGreater(report.cancellation_ratio, 1e6)
        self.assertTrue(report.diverges)
        self.assertTrue(report.overflowed)
        exact = closed_form_pmf(20, 400, 20)
        dp_value = float_pmf(20, 400).p[400, 20]
        self.assertLessEqual(abs(dp_value - float(exact)), 1e-10)

    def test_cancellation_without_overflow(self):
        report = float_closed_form(25, 25, 25)
        self.assertFalse(report.overflowed)
        self.assertGreater(report.cancellation_ratio, 1e6)


class CompletionTests(SimpleTestCase):
    def test_single_coupon(self):
        stats = completion_stats(1, 1e-9)
        self.assertAlmostEqual(stats.mean, 1.0, delta=1e-9)
        self.assertEqual(stats.cdf[-1], 1.0)

    def test_harmonic_oracle(self):
        for m, expected in ((2, 3.0), (5, 11.41666667), (10, 29.28968254)):
            stats = completion_stats(m, 1e-9)
            self.assertAlmostEqual(stats.mean, harmonic_mean(m), delta=1e-6)
            self.assertAlmostEqual(stats.mean, expected, delta=1e-6)
            self.assertGreaterEqual(stats.mean, m)

    def test_law_shape(self):
        stats = completion_stats(6, 1e-9)
        self.assertTrue((stats.pmf >= 0).all())
        self.assertTrue((stats.cdf[1:] >= stats.cdf[:-1]).all())
        self.assertGreater(stats.cdf[-1], 1 - 1e-9)
        self.assertLess(stats.tail_bound, 1e-9)
        self.assertTrue(math.isclose(stats.pmf.sum(), stats.cdf[-1]))

    def test_rejects_bad_tolerance(self):
        with self.assertRaises(DomainError):
            completion_stats(3, 1.5)


class PmfCommandTests(SimpleTestCase):
    def test_exact_csv(self):
        out = io.StringIO()
        call_command('pmf', '--m', '2', '--n-max', '2', '--exact', '--format', 'csv', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 'm,n,k,p_num,p_den,p_float')
        self.assertIn('2,2,1,1,2,0.5', lines)
        self.assertEqual(len(lines), 1 + 3 * 3)

    def test_float_csv_leaves_exact_columns_empty(self):
        out = io.StringIO()
        call_command('pmf', '--m', '2', '--n-max', '2', '--float', stdout=out)
        self.assertIn('2,2,2,,,0.5', out.getvalue().splitlines())

    def test_json(self):
        out = io.StringIO()
        call_command('pmf', '--m', '3', '--n-max', '3', '--format', 'json', stdout=out)
        rows = json.loads(out.getvalue())
        row = next(r for r in rows if r['n'] == 3 and r['k'] == 3)
        self.assertEqual((row['p_num'], row['p_den']), ('2', '9'))
        self.assertEqual(row['p'], '2/9')
        self.assertEqual(rows[0]['p'], '1')

    def test_seventeen_digits(self):
        out = io.StringIO()
        call_command('pmf', '--m', '3', '--n-max', '1', stdout=out)
        self.assertIn('3,1,1,1,1,1', out.getvalue())
        out = io.StringIO()
        call_command('pmf', '--m', '3', '--n-max', '2', stdout=out)
        self.assertIn('3,2,1,1,3,0.33333333333333331', out.getvalue())

    def test_invalid_m_exits_2(self):
        err = io.StringIO()
        with redirect_stdout(io.StringIO()), redirect_stderr(err):
            code = run(['pmf', '--m', '0', '--n-max', '3'])
        self.assertEqual(code, 2)
        self.assertIn('--m', err.getvalue())

    def test_unknown_flag_exits_2(self):
        with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
            self.assertEqual(run(['pmf', '--m', '2', '--n-max', '1', '--bogus']), 2)

    def test_csv_streams_past_the_table_cap(self):
        capped = dict(settings.COLLECTOR_LAB, MAX_TABLE_CELLS=10)
        with override_settings(COLLECTOR_LAB=capped):
            for backend in ('--exact', '--float'):
                out = io.StringIO()
                call_command('pmf', '--m', '2', '--n-max', '5', backend, stdout=out)
                lines = out.getvalue().splitlines()
                self.assertEqual(len(lines), 1 + 6 * 3)
                self.assertEqual(lines[-1].split(',')[-1], '0.9375')

    def test_whole_documents_respect_the_table_cap(self):
        capped = dict(settings.COLLECTOR_LAB, MAX_TABLE_CELLS=10)
        with override_settings(COLLECTOR_LAB=capped):
            for backend in ('--exact', '--float'):
                with self.assertRaises(CommandError) as ctx:
                    call_command('pmf', '--m', '2', '--n-max', '5', backend,
                                 '--format', 'json', stdout=io.StringIO())
                self.assertEqual(ctx.exception.returncode, 2)
                self.assertIn('MAX_TABLE_CELLS', str(ctx.exception))

    def test_output_is_deterministic(self):
        first, second = io.StringIO(), io.StringIO()
        call_command('pmf', '--m', '4', '--n-max', '6', stdout=first)
        call_command('pmf', '--m', '4', '--n-max', '6', stdout=second)
        self.assertEqual(first.getvalue(), second.getvalue())
