import io
import json
import math
from fractions import Fraction

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from .services import (
    alternating_sum,
    bell_numbers,
    bell_recurrence_holds,
    stirling_explicit,
    stirling_table,
)


class StirlingTableTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.table = stirling_table(60)

    def test_seed_rows(self):
        self.assertEqual(self.table.get(1, 1), 1)
        self.assertEqual(self.table.get(2, 1), 1)
        self.assertEqual(self.table.get(2, 2), 1)

    def test_hand_expanded_value(self):
        self.assertEqual(self.table.get(4, 2), 7)

    def test_first_column_and_diagonal(self):
        for n in range(1, 61):
            self.assertEqual(self.table.get(n, 1), 1)
            self.assertEqual(self.table.get(n, n), 1)

    def test_zero_above_diagonal(self):
        self.assertEqual(self.table.get(5, 7), 0)

    def test_entries_positive(self):
        for n, k, a in self.table.rows():
            self.assertGreater(a, 0, msg=f"a[{n}][{k}]")

    def test_recurrence_matches_explicit_sum(self):
        for n in range(1, 61):
            for k in range(1, n + 1):
                self.assertEqual(stirling_explicit(n, k), self.table.get(n, k), msg=f"({n}, {k})")

    def test_second_column(self):
        for n in range(2, 61):
            self.assertEqual(self.table.get(n, 2), 2 ** (n - 1) - 1)

    def test_bell_numbers(self):
        self.assertEqual(bell_numbers(self.table)[:6], (1, 1, 2, 5, 15, 52))
        self.assertTrue(bell_recurrence_holds(self.table))

    def test_column_generating_function(self):
        # sum_n a[n][k] x^n / n! == (e^x - 1)^k / k!, compared up to x^N
        order = 20
        base = [Fraction(0)] + [Fraction(1, math.factorial(i)) for i in range(1, order + 1)]
        power = [Fraction(1)] + [Fraction(0)] * order
        for k in range(1, 8):
            power = [
                sum(power[i] * base[n - i] for i in range(n + 1))
                for n in range(order + 1)
            ]
            for n in range(1, order + 1):
                coefficient = power[n] * math.factorial(n) / math.factorial(k)
                self.assertEqual(coefficient, self.table.get(n, k), msg=f"({n}, {k})")


class StirlingExplicitTests(SimpleTestCase):
    def test_hand_value(self):
        self.assertEqual(alternating_sum(3, 2), 6)
        self.assertEqual(stirling_explicit(3, 2), 3)

    def test_diagonal(self):
        for n in range(1, 21):
            self.assertEqual(stirling_explicit(n, n), 1)

    def test_above_diagonal(self):
        self.assertEqual(stirling_explicit(5, 7), 0)


class StirlingCommandTests(SimpleTestCase):
    def test_csv_rows(self):
        out = io.StringIO()
        call_command('stirling', '--n-max', '3', stdout=out)
        self.assertEqual(
            out.getvalue(),
            'n,k,a\n1,1,1\n2,1,1\n2,2,1\n3,1,1\n3,2,3\n3,3,1\n',
        )

    def test_json_rows(self):
        out = io.StringIO()
        call_command('stirling', '--n-max', '2', '--format', 'json', stdout=out)
        self.assertEqual(json.loads(out.getvalue())[-1], {'n': 2, 'k': 2, 'a': '1'})

    def test_rejects_zero(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('stirling', '--n-max', '0')
        self.assertEqual(ctx.exception.returncode, 2)
