import logging
import math
from fractions import Fraction

from django.conf import settings

from distribution.models import Route
from distribution.services import (
    closed_form_pmf,
    closed_form_row,
    completion_stats,
    dp_pmf,
    enumerate_pmf,
    expected_distinct,
    float_closed_form,
    float_pmf,
    iter_dp_counts,
    mean_coupons,
    variance_coupons,
)
from genfun.models import PolyY
from genfun.services import (
    ansatz_coefficients,
    apply_recurrence,
    egf_closed_eval,
    egf_expand,
    egf_exponential_eval,
    gn_direct,
    mgf_mean,
)
from montecarlo.models import SEED_LIMIT, SimConfig
from montecarlo.services import compare, simulate
from numeric_core.services import pow_rational
from stirling.services import bell_recurrence_holds, stirling_explicit, stirling_table

from .models import EXACT, CheckResult, CheckStatus, VerifyReport

logger = logging.getLogger(__name__)

FLOAT_DP_TOL = 1e-10
COMPLETION_TOL = 1e-6
EXPONENTIAL_FORM_TOL = 1e-9
SERIES_ROUNDING_TOL = 1e-12
CANCELLATION_PROBE = (20, 400, 20)
EGF_POINTS = (-2.0, -0.5, 0.75, 2.0)
EGF_Y_POINTS = (-1.0, 0.0, 0.5, 1.0)


class Mismatch(Exception):
    """Raised inside a check at the first exact disagreement."""
    pass


def _exact(name, scope, body):
    try:
        body()
    except (Mismatch, AssertionError) as e:
        return CheckResult(name=name, scope=scope, status=CheckStatus.FAIL, deviation=str(e))
    return CheckResult(name=name, scope=scope, deviation=EXACT)


def _within(name, scope, deviation, tolerance):
    status = CheckStatus.PASS if deviation <= tolerance else CheckStatus.FAIL
    return CheckResult(name=name, scope=scope, status=status, deviation=deviation)


def _expect(left, right, where):
    if left != right:
        raise Mismatch(f"mismatch at {where}")


class VerificationSuite:
    """
    Cross-route equivalence checks over an (m, n) envelope.
    """

    def __init__(self, m_max=None, n_max=None, trials=None, seed=None,
                 stirling_n_max=None, workers=None, montecarlo=True):
        options = settings.COLLECTOR_LAB
        self.m_max = options['VERIFY_M_MAX'] if m_max is None else m_max
        self.n_max = options['VERIFY_N_MAX'] if n_max is None else n_max
        self.trials = options['VERIFY_TRIALS'] if trials is None else trials
        self.seed = options['DEFAULT_SEED'] if seed is None else seed
        self.stirling_n_max = options['VERIFY_STIRLING_N_MAX'] if stirling_n_max is None else stirling_n_max
        self.workers = workers
        self.montecarlo = montecarlo

    @property
    def envelope(self):
        return {'m_max': self.m_max, 'n_max': self.n_max}

    def get_all_checks(self):
        """Run every check and collect a report"""
        checks = [
            self.check_stirling_recurrence_vs_explicit(),
            self.check_stirling_second_column(),
            self.check_stirling_bell_recurrence(),
            self.check_enumeration_oracle(),
            self.check_pmf_routes_exact(),
            self.check_conservation_support(),
            self.check_mean_identity(),
            self.check_variance_identity(),
            self.check_genfun_routes(),
            self.check_ansatz_coefficients(),
            self.check_egf_closed_forms(),
            self.check_completion_mean(),
            self.check_float_dp_accuracy(),
            self.check_float_closed_form_cancellation(),
        ]
        if self.montecarlo:
            checks.append(self.check_montecarlo_fit())

        for check in checks:
            if not check.passed:
                logger.warning(f"Check {check.name} failed: {check.deviation}")
        report = VerifyReport(checks=tuple(checks))
        logger.info(f"Verification finished: {report.overall}")
        return report

    # Stirling numbers

    def check_stirling_recurrence_vs_explicit(self):
        table = stirling_table(self.stirling_n_max)

        def body():
            for n in range(1, self.stirling_n_max + 1):
                for k in range(1, n + 1):
                    _expect(stirling_explicit(n, k), table.get(n, k), f"n={n} k={k}")

        return _exact('stirling_recurrence_vs_explicit', {'n_max': self.stirling_n_max}, body)

    def check_stirling_second_column(self):
        table = stirling_table(self.stirling_n_max)

        def body():
            for n in range(2, self.stirling_n_max + 1):
                _expect(table.get(n, 2), 2 ** (n - 1) - 1, f"n={n}")

        return _exact('stirling_second_column', {'n_max': self.stirling_n_max}, body)

    def check_stirling_bell_recurrence(self):
        def body():
            if not bell_recurrence_holds(stirling_table(self.stirling_n_max)):
                raise Mismatch("Bell recurrence")

        return _exact('stirling_bell_recurrence', {'n_max': self.stirling_n_max}, body)

    # Probabilities

    def check_enumeration_oracle(self):
        m_top, n_top = min(4, self.m_max), min(8, self.n_max)

        def body():
            for m in range(1, m_top + 1):
                table = dp_pmf(m, n_top)
                for n in range(n_top + 1):
                    oracle = enumerate_pmf(m, n).probabilities
                    _expect(table.p[n], oracle, f"dp m={m} n={n}")
                    for route in (Route.RUDE, Route.SIMPLIFIED):
                        _expect(closed_form_row(m, n, route).probabilities, oracle, f"{route} m={m} n={n}")

        return _exact('enumeration_oracle', {'m_max': m_top, 'n_max': n_top}, body)

    def check_pmf_routes_exact(self):
        def body():
            for m in range(1, self.m_max + 1):
                table = dp_pmf(m, self.n_max)
                for n in range(self.n_max + 1):
                    for route in (Route.RUDE, Route.SIMPLIFIED):
                        _expect(closed_form_row(m, n, route).probabilities, table.p[n], f"{route} m={m} n={n}")

        return _exact('pmf_routes_exact', self.envelope, body)

    def check_conservation_support(self):
        def body():
            for m in range(1, self.m_max + 1):
                table = dp_pmf(m, self.n_max)
                for n in range(self.n_max + 1):
                    row = table.p[n]
                    _expect(sum(row), 1, f"row sum m={m} n={n}")
                    for k in range(m + 1):
                        zero = k > min(n, m) or (k == 0 and n >= 1)
                        _expect(row[k] == 0, zero, f"support m={m} n={n} k={k}")

        return _exact('conservation_support', self.envelope, body)

    def check_mean_identity(self):
        def body():
            for m in range(1, self.m_max + 1):
                for n in range(self.n_max + 1):
                    closed = expected_distinct(m, n)
                    _expect(mean_coupons(m, n), closed, f"pmf m={m} n={n}")
                    _expect(mgf_mean(gn_direct(m, n)), closed, f"mgf m={m} n={n}")

        return _exact('mean_identity', self.envelope, body)

    def check_variance_identity(self):
        def body():
            for m in range(1, self.m_max + 1):
                for n in range(self.n_max + 1):
                    q1 = pow_rational(1 - Fraction(1, m), n)
                    q2 = pow_rational(1 - Fraction(2, m), n)
                    closed = m * (m - 1) * q2 + m * q1 - m * m * q1 * q1
                    _expect(variance_coupons(m, n), closed, f"m={m} n={n}")

        return _exact('variance_identity', self.envelope, body)

    # Generating functions

    def check_genfun_routes(self):
        table = stirling_table(max(self.n_max, 1))

        def body():
            for m in range(1, self.m_max + 1):
                series = egf_expand(m, self.n_max)
                g = PolyY.one()
                for n in range(self.n_max + 1):
                    direct = gn_direct(m, n, table)
                    _expect(g, direct, f"operator m={m} n={n}")
                    _expect(series.term(n), direct, f"egf m={m} n={n}")
                    _expect(direct.evaluate(1), 1, f"normalization m={m} n={n}")
                    g = apply_recurrence(g, m)

        return _exact('genfun_routes', self.envelope, body)

    def check_ansatz_coefficients(self):
        table = stirling_table(max(self.n_max, 1))

        def body():
            for m in range(1, self.m_max + 1):
                for n in range(1, self.n_max + 1):
                    expected = tuple(table.get(n, k) for k in range(1, min(n, m) + 1))
                    _expect(ansatz_coefficients(gn_direct(m, n, table), m, n), expected, f"m={m} n={n}")

        return _exact('ansatz_coefficients', self.envelope, body)

    def check_egf_closed_forms(self):
        order = 25
        worst = 0.0
        passed = True
        for m in range(1, min(self.m_max, 5) + 1):
            series = egf_expand(m, order)
            for x in EGF_POINTS:
                for y in EGF_Y_POINTS:
                    closed = egf_closed_eval(m, x, y)
                    bound = (
                        abs(x) ** (order + 1) / math.factorial(order + 1)
                        * math.exp(abs(x)) * (1 + abs(y)) ** m
                    )
                    series_gap = abs(closed - series.evaluate(x, y))
                    exponential_gap = abs(closed - egf_exponential_eval(m, x, y))
                    worst = max(worst, series_gap, exponential_gap)
                    if series_gap > bound + SERIES_ROUNDING_TOL or exponential_gap > EXPONENTIAL_FORM_TOL:
                        passed = False
        status = CheckStatus.PASS if passed else CheckStatus.FAIL
        scope = {'m_max': min(self.m_max, 5), 'order': order}
        return CheckResult(name='egf_closed_forms', scope=scope, status=status, deviation=worst)

    # Float backends

    def check_completion_mean(self):
        worst = 0.0
        for m in range(1, self.m_max + 1):
            harmonic = math.fsum(m / j for j in range(1, m + 1))
            worst = max(worst, abs(completion_stats(m, 1e-9).mean - harmonic))
        return _within('completion_mean', {'m_max': self.m_max}, worst, COMPLETION_TOL)

    def check_float_dp_accuracy(self):
        worst = 0.0
        for m in range(1, self.m_max + 1):
            table = float_pmf(m, self.n_max)
            for n, counts in iter_dp_counts(m, self.n_max):
                total = m ** n
                for k, count in enumerate(counts):
                    worst = max(worst, abs(float(table.p[n, k]) - count / total))
        return _within('float_dp_accuracy', self.envelope, worst, FLOAT_DP_TOL)

    def check_float_closed_form_cancellation(self):
        m, n, k = CANCELLATION_PROBE
        report = float_closed_form(m, n, k)
        dp_error = abs(float(float_pmf(m, n).p[n, k]) - float(closed_form_pmf(m, n, k)))
        passed = report.cancellation_ratio > 1e6 and dp_error <= FLOAT_DP_TOL
        return CheckResult(
            name='float_closed_form_cancellation',
            scope={'m': m, 'n': n, 'k': k},
            status=CheckStatus.PASS if passed else CheckStatus.FAIL,
            deviation=dp_error,
        )

    # Simulation

    def montecarlo_tolerance(self):
        """10-sigma envelope on a binomial frequency, never below 5e-3"""
        return max(5e-3, 5.0 / math.sqrt(self.trials))

    def check_montecarlo_fit(self):
        tolerance = self.montecarlo_tolerance()
        cases = [
            (m, n) for m, n in settings.COLLECTOR_LAB['VERIFY_MC_CASES'] if m <= self.m_max
        ]
        worst = 0.0
        passed = True
        for index, (m, n) in enumerate(cases):
            config = SimConfig.create(m, n, self.trials, seed=(self.seed + index) % SEED_LIMIT)
            report = compare(simulate(config, workers=self.workers), closed_form_row(m, n, Route.DP))
            worst = max(worst, report.max_abs_deviation)
            passed = passed and report.passed(tolerance)
        scope = {'cases': ' '.join(f"{m}:{n}" for m, n in cases), 'trials': self.trials}
        status = CheckStatus.PASS if passed else CheckStatus.FAIL
        return CheckResult(name='montecarlo_fit', scope=scope, status=status, deviation=worst)
