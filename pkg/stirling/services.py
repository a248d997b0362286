import logging

from numeric_core.services import binomial, factorial

from .models import StirlingTable

logger = logging.getLogger(__name__)


def stirling_table(n_max):
    """
    Fill a[n][k] = a[n-1][k-1] + k * a[n-1][k] from a[1][1] = 1.
    """
    assert n_max >= 1, "stirling_table needs n_max >= 1"
    entries = [(1,)]
    previous = [1]  # row 0, padded: index k holds a[0][k]
    for n in range(1, n_max + 1):
        current = [0] * (n + 1)
        for k in range(1, n + 1):
            left = previous[k - 1] if k - 1 < len(previous) else 0
            up = previous[k] if k < len(previous) else 0
            current[k] = left + k * up
        entries.append(tuple(current))
        previous = current

    for n in range(2, n_max + 1):
        assert entries[n][1] == entries[n - 1][1] == 1
        assert entries[n][n] == entries[n - 1][n - 1] == 1

    logger.debug(f"Built Stirling table up to n={n_max}")
    return StirlingTable(n_max=n_max, entries=tuple(entries))


def alternating_sum(n, k):
    """sum_{j=1}^{k} (-1)^(k-j) C(k, j) j^n, which is k! * a[n][k]"""
    return sum((-1) ** (k - j) * binomial(k, j) * j ** n for j in range(1, k + 1))


def stirling_explicit(n, k):
    """a[n][k] from the explicit alternating sum divided by k!"""
    assert n >= 1 and k >= 1, "stirling_explicit needs n >= 1, k >= 1"
    if k > n:
        return 0
    quotient, remainder = divmod(alternating_sum(n, k), factorial(k))
    assert remainder == 0, f"alternating sum for ({n}, {k}) not divisible by {k}!"
    return quotient


def bell_numbers(table):
    """B(0..n_max) as row sums of the table, B(0) = 1"""
    return (1,) + tuple(sum(table.row(n)) for n in range(1, table.n_max + 1))


def bell_recurrence_holds(table):
    """Check B(n+1) = sum_k C(n, k) B(k) for every n + 1 <= n_max"""
    bell = bell_numbers(table)
    for n in range(table.n_max):
        if bell[n + 1] != sum(binomial(n, k) * bell[k] for k in range(n + 1)):
            logger.warning(f"Bell recurrence fails at n={n + 1}")
            return False
    return True
