import math
from dataclasses import dataclass

import numpy as np
from django.db import models
from django.utils.translation import gettext_lazy as _


class Backend(models.TextChoices):
    EXACT = 'exact', _('Exact rationals')
    FLOAT = 'float', _('Binary64 floats')


class Route(models.TextChoices):
    DP = 'dp', _('Master equation')
    RUDE = 'rude', _('Product form')
    SIMPLIFIED = 'simplified', _('Binomial form')


@dataclass(frozen=True)
class PmfRow:
    """p[n][0..m] for one (m, n)"""
    m: int
    n: int
    probabilities: tuple

    def __getitem__(self, k):
        return self.probabilities[k]

    def __len__(self):
        return len(self.probabilities)


@dataclass(frozen=True)
class DistTable:
    """Exact p[n][k] for 0 <= n <= n_max, 0 <= k <= m"""
    m: int
    n_max: int
    p: tuple

    def row(self, n):
        return PmfRow(m=self.m, n=n, probabilities=self.p[n])

    def completion_cdf(self):
        """P(T <= n) = p[n][m] for n = 0..n_max"""
        return tuple(row[self.m] for row in self.p)


@dataclass(frozen=True, eq=False)
class FloatDistTable:
    """Float p[n][k]; ``p`` has shape (n_max + 1, m + 1)"""
    m: int
    n_max: int
    p: np.ndarray

    def row(self, n):
        return PmfRow(m=self.m, n=n, probabilities=tuple(float(v) for v in self.p[n]))


@dataclass(frozen=True, eq=False)
class CompletionStats:
    """
    Law of the completion time T, the first n with all m coupons collected.

    cdf[n] = P(T <= n) and pmf[n] = P(T = n) for n <= horizon; ``mean`` is the
    truncated survival sum and ``tail_bound`` majorizes what was left out.
    """
    m: int
    cdf: np.ndarray
    pmf: np.ndarray
    mean: float
    horizon: int
    tail_bound: float


@dataclass(frozen=True)
class CancellationReport:
    """Naive float evaluation of the binomial closed form against the exact value"""
    m: int
    n: int
    k: int
    value: float
    exact: float
    abs_error: float
    cancellation_ratio: float
    overflowed: bool

    @property
    def diverges(self):
        return not math.isfinite(self.value) or self.abs_error > 1e-12
