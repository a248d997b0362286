import io
import math
from fractions import Fraction

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from distribution.services import dp_pmf, expected_distinct
from numeric_core.exceptions import DomainError
from stirling.services import stirling_table

from .models import PolyY
from .services import (
    ansatz_coefficients,
    apply_recurrence,
    egf_closed_eval,
    egf_expand,
    egf_exponential_eval,
    gn_by_recurrence,
    gn_direct,
    mgf_mean,
)

y = PolyY.monomial(1)


class PolyYTests(SimpleTestCase):
    def test_trailing_zeros_trimmed(self):
        self.assertEqual(PolyY((1, 2, 0, 0)).coeffs, (1, 2))
        self.assertEqual(PolyY((0, 0)).degree, -1)

    def test_arithmetic(self):
        p = PolyY((1, 1))
        self.assertEqual(p * p, PolyY((1, 2, 1)))
        self.assertEqual(p - p, PolyY())
        self.assertEqual((p * p).derivative(), PolyY((2, 2)))
        self.assertEqual(p.evaluate(Fraction(1, 2)), Fraction(3, 2))
        self.assertEqual(p.evaluate(0.5), 1.5)

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            y.coeffs = (1,)


class RecurrenceTests(SimpleTestCase):
    def test_first_step(self):
        for m in range(1, 6):
            self.assertEqual(apply_recurrence(PolyY.one(), m), y)

    def test_second_step(self):
        self.assertEqual(apply_recurrence(y, 2), PolyY((0, Fraction(1, 2), Fraction(1, 2))))

    def test_preserves_value_at_one(self):
        g = PolyY((Fraction(1, 3), 2, Fraction(-5, 7), 4))
        for m in range(1, 6):
            self.assertEqual(apply_recurrence(g, m).evaluate(1), g.evaluate(1))

    def test_degree_bound(self):
        for m in range(1, 6):
            g = PolyY.one()
            for _ in range(10):
                nxt = apply_recurrence(g, m)
                self.assertLessEqual(nxt.degree, g.degree + 1)
                self.assertLessEqual(nxt.degree, max(g.degree, m))
                g = nxt


class DirectFormTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(gn_direct(2, 2), PolyY((0, Fraction(1, 2), Fraction(1, 2))))
        self.assertEqual(gn_direct(4, 0), PolyY.one())
        self.assertEqual(
            gn_direct(3, 3),
            PolyY((0, Fraction(1, 9), Fraction(2, 3), Fraction(2, 9))),
        )

    def test_degree_capped_at_m(self):
        self.assertEqual(gn_direct(3, 10).degree, 3)

    def test_probability_link(self):
        for m in range(1, 7):
            table = dp_pmf(m, 12)
            for n in range(13):
                g = gn_direct(m, n)
                for k in range(m + 1):
                    self.assertEqual(g.coefficient(k), table.p[n][k])

    def test_ansatz_coefficients_are_stirling(self):
        table = stirling_table(14)
        for m in range(1, 7):
            for n in range(1, 15):
                recovered = ansatz_coefficients(gn_by_recurrence(m, n), m, n)
                expected = tuple(table.get(n, k) for k in range(1, min(n, m) + 1))
                self.assertEqual(recovered, expected)


class EgfTests(SimpleTestCase):
    def test_single_type(self):
        series = egf_expand(1, 3)
        for n in (1, 2, 3):
            self.assertEqual(series.term(n), y)

    def test_constant_term(self):
        for m in range(1, 5):
            self.assertEqual(egf_expand(m, 0).term(0), PolyY.one())

    def test_second_term(self):
        self.assertEqual(egf_expand(2, 2).term(2), PolyY((0, Fraction(1, 2), Fraction(1, 2))))

    def test_beyond_order(self):
        with self.assertRaises(DomainError):
            egf_expand(2, 2).term(3)

    def test_closed_eval(self):
        for m in range(1, 5):
            self.assertEqual(egf_closed_eval(m, 0.0, 0.3), 1.0)
        self.assertAlmostEqual(egf_closed_eval(1, 1.0, 0.5), 1 + 0.5 * (math.e - 1), delta=1e-12)
        self.assertAlmostEqual(egf_closed_eval(1, 1.0, 0.5), 1.859140914, delta=1e-9)
        self.assertAlmostEqual(egf_closed_eval(3, 2.0, 1.0), math.exp(2.0), delta=1e-12)

    def test_closed_eval_at_y_one(self):
        for m in range(1, 7):
            for x in (-1.5, 0.25, 1.0, 3.0):
                self.assertTrue(math.isclose(egf_closed_eval(m, x, 1.0), math.exp(x), rel_tol=4e-15))

    def test_exponential_sum_form(self):
        for m in range(1, 6):
            for x in (-1.0, 0.5, 2.0):
                for y_value in (-1.0, 0.3, 1.0):
                    self.assertAlmostEqual(
                        egf_exponential_eval(m, x, y_value),
                        egf_closed_eval(m, x, y_value),
                        delta=1e-9,
                    )

    def test_series_remainder(self):
        order = 25
        for m in range(1, 6):
            series = egf_expand(m, order)
            for x in (-2.0, -0.7, 0.0, 1.3, 2.0):
                for y_value in (-1.0, -0.4, 0.0, 0.6, 1.0):
                    bound = (
                        abs(x) ** (order + 1) / math.factorial(order + 1)
                        * math.exp(abs(x)) * (1 + abs(y_value)) ** m
                    )
                    gap = abs(egf_closed_eval(m, x, y_value) - series.evaluate(x, y_value))
                    # float rounding of both evaluations sits on top of the truncation bound
                    self.assertLessEqual(gap, bound + 1e-12)

    def test_closed_eval_saturates_instead_of_raising(self):
        self.assertEqual(egf_closed_eval(1, 800.0, 1.0), math.inf)
        self.assertEqual(egf_closed_eval(2, 1000.0, 1.0), math.inf)
        self.assertEqual(egf_closed_eval(2, 1.0, 1e200), math.inf)
        self.assertEqual(egf_closed_eval(3, 1.0, -1e200), -math.inf)
        self.assertEqual(egf_closed_eval(2, -1000.0, 1.0), 0.0)
        self.assertEqual(egf_closed_eval(4, 1000.0, 0.0), 1.0)

    def test_other_evaluations_saturate(self):
        self.assertEqual(egf_exponential_eval(1, 800.0, 1.0), math.inf)
        self.assertEqual(egf_exponential_eval(2, 0.0, 1e200), 1.0)
        self.assertEqual(egf_expand(2, 3).evaluate(1000.0, 0.0), 1.0)
        self.assertEqual(egf_expand(2, 3).evaluate(1e200, 1.0), math.inf)


class RouteEquivalenceTests(SimpleTestCase):
    def test_three_routes(self):
        table = stirling_table(12)
        for m in range(1, 7):
            series = egf_expand(m, 12)
            g = PolyY.one()
            for n in range(13):
                direct = gn_direct(m, n, table)
                self.assertEqual(g, direct, msg=f"m={m} n={n}")
                self.assertEqual(series.term(n), direct, msg=f"m={m} n={n}")
                self.assertEqual(direct.evaluate(1), 1)
                g = apply_recurrence(g, m)

    def test_mean_from_mgf(self):
        for m in range(1, 13):
            for n in range(25):
                self.assertEqual(mgf_mean(gn_direct(m, n)), expected_distinct(m, n))


class EgfCommandTests(SimpleTestCase):
    def test_term_table(self):
        out = io.StringIO()
        call_command('egf', '--m', '2', '--order', '2', stdout=out)
        lines = out.getvalue().splitlines()
        self.assertEqual(lines[0], 'n,k,coeff_num,coeff_den')
        self.assertIn('0,0,1,1', lines)
        self.assertIn('2,1,1,2', lines)
        self.assertIn('2,2,1,2', lines)

    def test_evaluation(self):
        out = io.StringIO()
        call_command('egf', '--m', '3', '--order', '25', '--at', '2,1', stdout=out)
        header, values = out.getvalue().splitlines()
        self.assertEqual(header, 'm,order,x,y,closed,series')
        closed = float(values.split(',')[4])
        self.assertAlmostEqual(closed, math.exp(2.0), delta=1e-12)

    def test_bad_point(self):
        with self.assertRaises(CommandError) as ctx:
            call_command('egf', '--m', '3', '--order', '4', '--at', '2')
        self.assertEqual(ctx.exception.returncode, 2)

    def test_evaluation_beyond_float_range(self):
        out = io.StringIO()
        call_command('egf', '--m', '2', '--order', '0', '--at', '1000,1', stdout=out)
        self.assertEqual(out.getvalue().splitlines()[1], '2,0,1000,1,inf,1')
