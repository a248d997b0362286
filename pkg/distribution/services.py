"""
p[n][k], the probability of holding exactly k distinct coupons after n
uniform draws (with replacement) from m types, by three routes: the master
equation, the product ("rude") closed form and the binomial closed form.
"""
import itertools
import logging
import math
from fractions import Fraction

import numpy as np
from django.conf import settings

from numeric_core.exceptions import DomainError, TableTooLargeError
from numeric_core.services import binomial, falling_product, pow_rational
from stirling.services import alternating_sum, stirling_explicit

from .models import CancellationReport, CompletionStats, DistTable, FloatDistTable, PmfRow, Route

logger = logging.getLogger(__name__)


def _check_m(m):
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")


def _check_horizon(n_max):
    if not isinstance(n_max, int) or n_max < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n_max!r}")


def _check_closed_form(m, n, k):
    _check_m(m)
    if n < 1:
        raise DomainError(f"closed forms are stated for n >= 1, got n={n}")
    if not 1 <= k <= m:
        raise DomainError(f"closed forms are stated for 1 <= k <= m, got k={k}, m={m}")


# Master equation

def iter_dp_counts(m, n_max):
    """
    Yield (n, counts) for n = 0..n_max where counts[k] = m**n * p[n][k] is the
    number of draw sequences in [m]^n with exactly k distinct coupons.

    Row n is computed from row n - 1 only:
        N[n][k] = N[n-1][k-1] * (m - k + 1) + N[n-1][k] * k
    """
    _check_m(m)
    _check_horizon(n_max)
    counts = (1,) + (0,) * m
    yield 0, counts
    for n in range(1, n_max + 1):
        current = [0] * (m + 1)
        for k in range(1, min(n, m) + 1):
            current[k] = counts[k - 1] * (m - k + 1) + counts[k] * k
        counts = tuple(current)
        yield n, counts


def iter_dp_rows(m, n_max):
    """Yield (n, p[n][0..m]) as exact Rationals with O(m) state"""
    for n, counts in iter_dp_counts(m, n_max):
        total = m ** n
        yield n, tuple(Fraction(count, total) for count in counts)


def check_table_size(m, n_max):
    """Refuse whole tables of more than MAX_TABLE_CELLS cells"""
    cells = (n_max + 1) * (m + 1)
    limit = settings.COLLECTOR_LAB['MAX_TABLE_CELLS']
    if cells > limit:
        raise TableTooLargeError(cells, limit)


def dp_pmf(m, n_max):
    """Whole exact table from the master equation, capped by MAX_TABLE_CELLS"""
    _check_m(m)
    _check_horizon(n_max)
    check_table_size(m, n_max)
    rows = tuple(row for _, row in iter_dp_rows(m, n_max))
    logger.info(f"Built exact table m={m} n_max={n_max}")
    return DistTable(m=m, n_max=n_max, p=rows)


def enumerate_pmf(m, n):
    """Exhaustive count over [m]^n; the brute-force oracle for small m, n"""
    _check_m(m)
    _check_horizon(n)
    counts = [0] * (m + 1)
    for sequence in itertools.product(range(m), repeat=n):
        counts[len(set(sequence))] += 1
    total = m ** n
    return PmfRow(m=m, n=n, probabilities=tuple(Fraction(c, total) for c in counts))


# Closed forms

def closed_form_pmf(m, n, k):
    """p[n][k] = C(m, k) / m^n * sum_j (-1)^(k-j) C(k, j) j^n, for n >= 1, 1 <= k <= m"""
    _check_closed_form(m, n, k)
    return Fraction(binomial(m, k) * alternating_sum(n, k), m ** n)


def closed_form_pmf_rude(m, n, k):
    """p[n][k] = m^-(n-k) * prod_h (1 - h/m) * a[n][k], for n >= 1, 1 <= k <= m"""
    _check_closed_form(m, n, k)
    # Fraction handles the negative exponent when k > n; a[n][k] is 0 there anyway
    return Fraction(1, m) ** (n - k) * falling_product(m, k) * stirling_explicit(n, k)


def boundary_pmf(n, k):
    """p[0][0] = 1, p[0][k] = 0 for k >= 1, and p[n][0] = 0 for n >= 1"""
    return Fraction(1) if n == 0 and k == 0 else Fraction(0)


def closed_form_row(m, n, route=Route.SIMPLIFIED):
    """p[n][0..m] from a closed form, with the boundary convention where it is silent"""
    _check_m(m)
    _check_horizon(n)
    if route == Route.DP:
        counts = _last(iter_dp_counts(m, n))
        return PmfRow(m=m, n=n, probabilities=tuple(Fraction(c, m ** n) for c in counts))
    if n == 0:
        return PmfRow(m=m, n=0, probabilities=tuple(boundary_pmf(0, k) for k in range(m + 1)))
    formula = closed_form_pmf_rude if route == Route.RUDE else closed_form_pmf
    probabilities = (boundary_pmf(n, 0),) + tuple(formula(m, n, k) for k in range(1, m + 1))
    return PmfRow(m=m, n=n, probabilities=probabilities)


def _last(iterator):
    item = None
    for item in iterator:
        pass
    return item[1]


# Float backends

def iter_float_rows(m, n_max):
    """
    Yield (n, p[n][0..m]) from the master equation in binary64 with O(m)
    state; every update adds nonnegative terms.
    """
    _check_m(m)
    _check_horizon(n_max)
    k = np.arange(m + 1, dtype=np.float64)
    stay = k / m
    advance = (m - k) / m
    row = np.zeros(m + 1, dtype=np.float64)
    row[0] = 1.0
    yield 0, row
    for n in range(1, n_max + 1):
        shifted = row * stay
        shifted[1:] += row[:-1] * advance[:-1]
        row = shifted
        yield n, row


def float_pmf(m, n_max):
    """Whole float table, capped by MAX_TABLE_CELLS"""
    _check_m(m)
    _check_horizon(n_max)
    check_table_size(m, n_max)
    p = np.empty((n_max + 1, m + 1), dtype=np.float64)
    for n, row in iter_float_rows(m, n_max):
        p[n] = row
    return FloatDistTable(m=m, n_max=n_max, p=p)


def float_closed_form(m, n, k):
    """
    Evaluate the binomial closed form naively in binary64 and report how much
    of it cancels.

    The ratio is sum|t_j| / |sum t_j| over t_j = (-1)^(k-j) C(k, j) j^n,
    computed exactly; it is +inf when the float evaluation overflows. The
    sentinel is what flags overflow cases such as (20, 400, 20), where the
    exact ratio is close to 1 because the j = k term dominates.
    """
    _check_closed_form(m, n, k)
    exact_terms = [(-1) ** (k - j) * binomial(k, j) * j ** n for j in range(1, k + 1)]
    exact = closed_form_pmf(m, n, k)

    with np.errstate(over='ignore', invalid='ignore'):
        j = np.arange(1, k + 1, dtype=np.float64)
        signs = np.where((k - j) % 2 == 0, 1.0, -1.0)
        binomials = np.array([float(binomial(k, i)) for i in range(1, k + 1)])
        terms = signs * binomials * j ** n
        scale = np.float64(m) ** n
        value = float(float(binomial(m, k)) * terms.sum() / scale)
    overflowed = not (bool(np.all(np.isfinite(terms))) and bool(np.isfinite(scale)))

    exact_sum = sum(exact_terms)
    if overflowed or exact_sum == 0:
        ratio = math.inf
    else:
        try:
            ratio = float(Fraction(sum(abs(t) for t in exact_terms), abs(exact_sum)))
        except OverflowError:
            ratio = math.inf

    exact_float = float(exact)
    report = CancellationReport(
        m=m, n=n, k=k,
        value=value,
        exact=exact_float,
        abs_error=abs(value - exact_float),
        cancellation_ratio=ratio,
        overflowed=overflowed,
    )
    if report.diverges:
        logger.info(
            f"Float closed form diverges at m={m} n={n} k={k}: value={value} "
            f"exact={exact_float} ratio={ratio}"
        )
    return report


# Summary statistics

def expected_distinct(m, n):
    """m * (1 - (1 - 1/m)^n), exactly"""
    _check_m(m)
    _check_horizon(n)
    return m * (1 - pow_rational(1 - Fraction(1, m), n))


def mean_coupons(m, n):
    """sum_k k * p[n][k]"""
    counts = _last(iter_dp_counts(m, n))
    return Fraction(sum(k * c for k, c in enumerate(counts)), m ** n)


def variance_coupons(m, n):
    """sum_k k^2 * p[n][k] - mean^2"""
    counts = _last(iter_dp_counts(m, n))
    second = Fraction(sum(k * k * c for k, c in enumerate(counts)), m ** n)
    return second - mean_coupons(m, n) ** 2


def completion_stats(m, tail_tol=None):
    """
    cdf, pmf and mean of the completion time T.

    The mean is the survival sum sum_n (1 - p[n][m]), stopped at the first n
    where the majorant m * (1 - 1/m)^n of the summand drops below tail_tol / m;
    the omitted tail is then at most m^2 * (1 - 1/m)^n < tail_tol.
    """
    _check_m(m)
    if tail_tol is None:
        tail_tol = settings.COLLECTOR_LAB['COMPLETION_TAIL_TOL']
    if not 0 < tail_tol < 1:
        raise DomainError(f"tail_tol must lie in (0, 1), got {tail_tol}")

    k = np.arange(m + 1, dtype=np.float64)
    stay = k / m
    advance = (m - k) / m
    q = 1.0 - 1.0 / m

    row = np.zeros(m + 1, dtype=np.float64)
    row[0] = 1.0
    cdf = []
    survival = 0.0
    n = 0
    while m * q ** n >= tail_tol / m:
        cdf.append(row[m])
        survival += 1.0 - row[m]
        shifted = row * stay
        shifted[1:] += row[:-1] * advance[:-1]
        row = shifted
        n += 1
    cdf.append(row[m])

    cdf = np.array(cdf, dtype=np.float64)
    pmf = np.diff(cdf, prepend=0.0)
    logger.info(f"Completion law m={m}: horizon={n} mean={survival}")
    return CompletionStats(
        m=m,
        cdf=cdf,
        pmf=pmf,
        mean=survival,
        horizon=n,
        tail_bound=m * m * q ** n,
    )
