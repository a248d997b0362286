"""
g_n(y) = E[y^X_n] as exact polynomials, built three ways (operator
iteration, the Stirling closed form, expansion of the bivariate EGF), plus
float evaluation of G_m(x, y) = [1 - y(1 - e^(x/m))]^m.
"""
import logging
import math
from fractions import Fraction

import numpy as np

from numeric_core.exceptions import DomainError
from numeric_core.services import binomial, factorial, falling_product
from stirling.services import stirling_table

from .models import EgfSeries, PolyY

logger = logging.getLogger(__name__)


def _check_m(m):
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")


def _check_nonnegative(name, value):
    if not isinstance(value, int) or value < 0:
        raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")


def apply_recurrence(g, m):
    """
    One step of g_n(y) = y * [g_{n-1}(y) + ((1 - y) / m) * g'_{n-1}(y)].
    """
    _check_m(m)
    slope = g.derivative()
    # y * (1 - y) * g' = y g' - y^2 g'
    return g.shift() + (slope.shift() - slope.shift(2)) * Fraction(1, m)


def gn_by_recurrence(m, n):
    """n-fold operator iteration from g_0 = 1"""
    _check_nonnegative('n', n)
    g = PolyY.one()
    for _ in range(n):
        g = apply_recurrence(g, m)
    return g


def ansatz_prefactor(m, n, k):
    """m^-(n-k) * prod_{h<k} (1 - h/m), the weight of a[n][k] in g_n"""
    return Fraction(1, m) ** (n - k) * falling_product(m, k)


def gn_direct(m, n, table=None):
    """
    g_n(y) = sum_k y^k * m^-(n-k) * prod_{h<k} (1 - h/m) * a[n][k], summed to
    min(n, m); the terms with m < k <= n vanish through the product.
    """
    _check_m(m)
    _check_nonnegative('n', n)
    if n == 0:
        return PolyY.one()
    if table is None or table.n_max < n:
        table = stirling_table(n)
    top = min(n, m)
    coeffs = [Fraction(0)] * (top + 1)
    for k in range(1, top + 1):
        coeffs[k] = ansatz_prefactor(m, n, k) * table.get(n, k)
    assert all(falling_product(m, k) == 0 for k in range(m + 1, n + 1)), "nonzero tail beyond k = m"
    return PolyY(coeffs)


def ansatz_coefficients(g, m, n):
    """
    Recover a[n][1..min(n, m)] from the coefficients of g_n by dividing out the
    ansatz prefactor; each quotient must be an integer.
    """
    _check_m(m)
    _check_nonnegative('n', n)
    out = []
    for k in range(1, min(n, m) + 1):
        a = g.coefficient(k) / ansatz_prefactor(m, n, k)
        assert a.denominator == 1, f"a[{n}][{k}] = {a} is not an integer"
        out.append(a.numerator)
    return tuple(out)


def mgf_mean(g):
    """g'(1), the mean of the variable g generates"""
    return g.derivative().evaluate(Fraction(1))


def _series_product(left, right, order):
    out = []
    for n in range(order + 1):
        acc = PolyY()
        for i in range(n + 1):
            if left[i].coeffs and right[n - i].coeffs:
                acc = acc + left[i] * right[n - i]
        out.append(acc)
    return out


def egf_expand(m, order):
    """
    Expand [1 - y(1 - e^(x/m))]^m as a power series in x up to x^order with
    exact coefficients: e^(x/m) is truncated first, then the m-th power is
    taken with truncation. Term n of the result is n! times the x^n coefficient.
    """
    _check_m(m)
    _check_nonnegative('order', order)
    # 1 + y * (e^(x/m) - 1)
    bracket = [PolyY.one()] + [
        PolyY.monomial(1, Fraction(1, m ** i * factorial(i))) for i in range(1, order + 1)
    ]
    power = [PolyY.one()] + [PolyY()] * order
    for _ in range(m):
        power = _series_product(power, bracket, order)
    terms = tuple(power[n] * factorial(n) for n in range(order + 1))
    logger.debug(f"Expanded G_{m} to order {order}")
    return EgfSeries(m=m, order=order, terms=terms)


def egf_closed_eval(m, x, y):
    """
    [1 - y(1 - e^(x/m))]^m in binary64. Results beyond the float range come
    back as a signed infinity.
    """
    _check_m(m)
    if y == 0:
        return 1.0
    with np.errstate(over='ignore'):
        base = 1.0 + np.float64(y) * np.expm1(np.float64(x) / m)
        return float(base ** m)


def egf_exponential_eval(m, x, y):
    """
    G_m(x, y) from its exponential-sum form
    1 + sum_k (-1)^k y^k C(m, k) sum_j (-1)^j C(k, j) (e^(jx/m) - 1).

    Overflowing terms saturate to infinity; opposite infinities give nan.
    """
    _check_m(m)
    total = 1.0
    with np.errstate(over='ignore', invalid='ignore'):
        growth = np.expm1(np.arange(1, m + 1, dtype=np.float64) * (np.float64(x) / m))
        for k in range(1, m + 1):
            parts = [(-1) ** j * binomial(k, j) * growth[j - 1] for j in range(1, k + 1)]
            inner = _fsum(parts)
            if inner:
                total = total + (-1) ** k * np.float64(y) ** k * binomial(m, k) * inner
    return float(total)


def _fsum(parts):
    try:
        return math.fsum(parts)
    except (OverflowError, ValueError):
        # partial sums left the float range, or inf - inf
        return float(np.sum(parts))
