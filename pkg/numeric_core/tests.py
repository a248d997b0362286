import math
from fractions import Fraction

from django.test import SimpleTestCase

from .services import (
    binomial,
    falling_product,
    pow_rational,
    rational_to_str,
)


class BinomialTests(SimpleTestCase):
    def test_boundaries(self):
        self.assertEqual(binomial(5, 0), 1)
        self.assertEqual(binomial(5, 5), 1)

    def test_outside_range_is_zero(self):
        self.assertEqual(binomial(5, 7), 0)
        self.assertEqual(binomial(5, -1), 0)

    def test_pascal_value(self):
        self.assertEqual(binomial(5, 2), 10)

    def test_large_is_exact(self):
        self.assertEqual(binomial(200, 100), binomial(199, 99) + binomial(199, 100))


class FallingProductTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(falling_product(2, 2), Fraction(1, 2))
        self.assertEqual(falling_product(3, 4), 0)
        self.assertEqual(falling_product(4, 2), Fraction(3, 4))
        self.assertEqual(falling_product(4, 2), Fraction(binomial(4, 2) * 2, 16))

    def test_empty_product(self):
        self.assertEqual(falling_product(7, 0), 1)

    def test_identity_with_binomial(self):
        for m in range(1, 51):
            for k in range(1, m + 1):
                lhs = falling_product(m, k) * m ** k
                self.assertEqual(lhs.denominator, 1)
                self.assertEqual(lhs.numerator, binomial(m, k) * math.factorial(k))


class PowRationalTests(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(pow_rational(Fraction(3, 2), 0), 1)
        self.assertEqual(pow_rational(2, 10), 1024)
        self.assertEqual(pow_rational(Fraction(1, 3), 3), Fraction(1, 27))


class RationalTests(SimpleTestCase):
    def test_canonical_form(self):
        self.assertEqual(Fraction(2, 4), Fraction(1, 2))
        self.assertEqual(Fraction(2, -4).denominator, 2)

    def test_exact_round_trips(self):
        a, b = Fraction(7, 13), Fraction(-5, 9)
        self.assertEqual((a + b) - b, a)
        self.assertEqual((a * b) / b, a)

    def test_text_form(self):
        self.assertEqual(rational_to_str(Fraction(6, 4)), '3/2')
        self.assertEqual(rational_to_str(Fraction(4, 2)), '2')
        self.assertEqual(rational_to_str(Fraction(-1, 3)), '-1/3')
