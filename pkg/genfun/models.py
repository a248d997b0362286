import math
from dataclasses import dataclass
from fractions import Fraction

from numeric_core.exceptions import DomainError


class PolyY:
    """
    Dense polynomial in y with exact Rational coefficients; coeffs[k] is the
    coefficient of y^k. Trailing zeros are trimmed, so equal polynomials have
    equal coefficient tuples.
    """
    __slots__ = ('coeffs',)

    def __init__(self, coeffs=()):
        coeffs = [Fraction(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError('PolyY is immutable')

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def monomial(cls, k, coefficient=1):
        return cls((0,) * k + (coefficient,))

    @property
    def degree(self):
        """-1 for the zero polynomial"""
        return len(self.coeffs) - 1

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __add__(self, other):
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return PolyY(self.coefficient(k) + other.coefficient(k) for k in range(size))

    __radd__ = __add__

    def __neg__(self):
        return PolyY(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, PolyY):
            scalar = Fraction(other)
            return PolyY(c * scalar for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return PolyY()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyY(out)

    __rmul__ = __mul__

    def shift(self, power=1):
        """Multiply by y**power"""
        if not self.coeffs:
            return self
        return PolyY((0,) * power + self.coeffs)

    def derivative(self):
        return PolyY(k * c for k, c in enumerate(self.coeffs) if k)

    def evaluate(self, y):
        """Horner evaluation: exact for int/Rational y, float for float y"""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + (float(c) if isinstance(y, float) else c)
        return acc

    __call__ = evaluate

    def __eq__(self, other):
        if isinstance(other, PolyY):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyY((other,)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return 'PolyY(0)'
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"({c})*y^{k}")
        return f"PolyY({' + '.join(terms)})"


def _as_poly(value):
    return value if isinstance(value, PolyY) else PolyY((value,))


@dataclass(frozen=True)
class EgfSeries:
    """
    G_m(x, y) truncated after x^order: terms[n] is g_n(y), the coefficient of
    x^n / n!.
    """
    m: int
    order: int
    terms: tuple

    def term(self, n):
        if not 0 <= n <= self.order:
            raise DomainError(f"term {n} lies outside the truncation order {self.order}")
        return self.terms[n]

    def evaluate(self, x, y):
        """Float partial sum sum_{n <= order} x^n / n! * g_n(y)"""
        x, y = float(x), float(y)
        weight, parts = 1.0, []
        for n, g in enumerate(self.terms):
            if n:
                weight *= x / n
            value = g.evaluate(y)
            if value:
                parts.append(weight * value)
        try:
            return math.fsum(parts)
        except (OverflowError, ValueError):
            # partial sums left the float range, or inf - inf
            return sum(parts)
