import io
import json
import tracemalloc

from django.core.management import call_command
from django.test import SimpleTestCase

from distribution.models import Route
from distribution.services import closed_form_row, float_pmf
from numeric_core.exceptions import DomainError

from .models import SimConfig
from .services import compare, pool_bins, shard_sizes, simulate


class SimConfigTests(SimpleTestCase):
    def test_defaults_from_settings(self):
        config = SimConfig.create(3, 4, 10)
        self.assertEqual(config.shards, 16)
        self.assertEqual(config.chunk_trials, 65_536)

    def test_rejects_invalid(self):
        with self.assertRaises(DomainError):
            SimConfig.create(0, 4, 10)
        with self.assertRaises(DomainError):
            SimConfig.create(3, 4, 0)
        with self.assertRaises(DomainError):
            SimConfig.create(3, 4, 10, seed=2 ** 64)

    def test_shard_sizes_cover_trials(self):
        config = SimConfig.create(3, 4, 100, shards=16)
        sizes = shard_sizes(config)
        self.assertEqual(sum(sizes), 100)
        self.assertLessEqual(max(sizes) - min(sizes), 1)


class SimulateTests(SimpleTestCase):
    def test_single_type(self):
        emp = simulate(SimConfig.create(1, 5, 1000, seed=7))
        self.assertEqual(emp.counts, (0, 1000))

    def test_zero_draws(self):
        emp = simulate(SimConfig.create(3, 0, 100, seed=7))
        self.assertEqual(emp.counts[0], 100)

    def test_two_types(self):
        emp = simulate(SimConfig.create(2, 2, 100_000, seed=11))
        self.assertLess(abs(emp.freqs[1] - 0.5), 0.01)

    def test_support_and_totals(self):
        for m, n in ((5, 3), (4, 9), (6, 1)):
            emp = simulate(SimConfig.create(m, n, 5000, seed=3))
            self.assertEqual(sum(emp.counts), 5000)
            self.assertAlmostEqual(sum(emp.freqs), 1.0, delta=1e-12)
            self.assertEqual(emp.counts[0], 0)
            for k in range(min(n, m) + 1, m + 1):
                self.assertEqual(emp.counts[k], 0)

    def test_deterministic(self):
        config = SimConfig.create(6, 9, 20_000, seed=123)
        self.assertEqual(simulate(config), simulate(config))

    def test_workers_do_not_change_counts(self):
        config = SimConfig.create(6, 9, 50_000, seed=99, chunk_trials=1000)
        self.assertEqual(simulate(config, workers=1).counts, simulate(config, workers=4).counts)

    def test_seed_changes_counts(self):
        a = simulate(SimConfig.create(6, 9, 20_000, seed=1))
        b = simulate(SimConfig.create(6, 9, 20_000, seed=2))
        self.assertNotEqual(a.counts, b.counts)

    def test_long_runs_keep_memory_flat(self):
        config = SimConfig.create(2, 20_000, 4096, seed=6, shards=1)
        tracemalloc.start()
        try:
            emp = simulate(config)
            _, peak = tracemalloc.get_traced_memory()
        finally:
            tracemalloc.stop()
        # 2^-19999 chance of a missing type per trial
        self.assertEqual(emp.counts, (0, 0, 4096))
        self.assertLess(peak, 4 * 2 ** 20)


class CompareTests(SimpleTestCase):
    def test_against_itself(self):
        emp = simulate(SimConfig.create(4, 6, 10_000, seed=5))
        report = compare(emp, emp)
        self.assertEqual(report.max_abs_deviation, 0.0)
        self.assertAlmostEqual(report.chi_square, 0.0, delta=1e-12)

    def test_point_mass(self):
        emp = simulate(SimConfig.create(1, 4, 1000, seed=5))
        report = compare(emp, closed_form_row(1, 4, Route.DP))
        self.assertEqual(report.total_variation, 0.0)

    def test_mismatch(self):
        emp = simulate(SimConfig.create(3, 4, 100, seed=5))
        with self.assertRaises(DomainError):
            compare(emp, closed_form_row(3, 5, Route.DP))

    def test_pooling_toward_full_collection(self):
        groups = pool_bins([0, 3, 40, 50, 7], [0.0, 2.0, 41.0, 50.0, 7.0], 5.0)
        self.assertEqual(groups, [[43.0, 43.0], [50.0, 50.0], [7.0, 7.0]])
        groups = pool_bins([80, 17, 3], [80.0, 17.0, 3.0], 5.0)
        self.assertEqual(groups, [[80.0, 80.0], [20.0, 20.0]])

    def test_against_float_row(self):
        emp = simulate(SimConfig.create(10, 30, 1_000_000, seed=2024))
        report = compare(emp, float_pmf(10, 30).row(30))
        self.assertLess(report.max_abs_deviation, 5e-3)

    def test_statistical_suite(self):
        for (m, n), seed in zip(((2, 3), (5, 10), (10, 30)), (101, 202, 303)):
            emp = simulate(SimConfig.create(m, n, 1_000_000, seed=seed))
            report = compare(emp, closed_form_row(m, n, Route.DP))
            self.assertLess(report.max_abs_deviation, 5e-3, msg=f"m={m} n={n}")
            self.assertLessEqual(report.chi_square, report.critical_value, msg=f"m={m} n={n}")
            self.assertTrue(report.passed(5e-3))


class SimulateCommandTests(SimpleTestCase):
    def test_csv(self):
        out = io.StringIO()
        call_command('simulate', '--m', '1', '--n', '3', '--trials', '10', '--seed', '4', stdout=out)
        self.assertEqual(out.getvalue(), 'k,count,freq\n0,0,0\n1,10,1\n')

    def test_compare_block(self):
        out = io.StringIO()
        call_command('simulate', '--m', '3', '--n', '4', '--trials', '2000', '--seed', '4',
                     '--compare-exact', stdout=out)
        rows, block = out.getvalue().split('\n\n')
        self.assertTrue(block.startswith('metric,value\nmax_abs_deviation,'))
        self.assertEqual(len(rows.splitlines()), 5)

    def test_json_and_determinism(self):
        first, second = io.StringIO(), io.StringIO()
        args = ('simulate', '--m', '4', '--n', '5', '--trials', '5000', '--seed', '8', '--format', 'json')
        call_command(*args, stdout=first)
        call_command(*args, '--workers', '3', stdout=second)
        self.assertEqual(first.getvalue(), second.getvalue())
        document = json.loads(first.getvalue())
        self.assertEqual(sum(row['count'] for row in document['rows']), 5000)
        self.assertEqual(document['config']['seed'], 8)
