"""
Exact scalars shared by every other app.

``Rational`` is :class:`fractions.Fraction`: always reduced, denominator
positive, equality structural. Big integers are plain Python ints.
"""
import math
from fractions import Fraction

Rational = Fraction


def binomial(n, k):
    """C(n, k), zero outside 0 <= k <= n"""
    assert n >= 0, "binomial needs n >= 0"
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def factorial(n):
    assert n >= 0, "factorial needs n >= 0"
    return math.factorial(n)


def falling_product(m, k):
    """
    prod_{h=0}^{k-1} (1 - h/m) as an exact Rational.

    Equals C(m, k) * k! / m**k, which is zero once k > m.
    """
    assert m >= 1 and k >= 0, "falling_product needs m >= 1, k >= 0"
    return Fraction(math.perm(m, k), m ** k)


def pow_rational(base, e):
    assert e >= 0, "pow_rational needs a nonnegative exponent"
    return Fraction(base) ** e


def rational_to_str(value):
    """Text form "num/den", or "num" when the denominator is 1"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"

