"""
Seeded simulation of the drawing process.

Shard s of a simulation draws from a Philox (counter-based) generator keyed
by SeedSequence(seed, spawn_key=(s,)). Trials are dealt to shards with
divmod and each shard is consumed in fixed chunks, so counts depend only on
the SimConfig, never on how many workers ran the shards.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from django.conf import settings
from scipy import stats

from numeric_core.exceptions import DomainError

from .models import EmpiricalPmf, FitReport

logger = logging.getLogger(__name__)


def shard_sizes(config):
    base, extra = divmod(config.trials, config.shards)
    return [base + (1 if s < extra else 0) for s in range(config.shards)]


def shard_generator(seed, shard):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(shard,))))


def simulate_shard(config, shard, size):
    """Counts of distinct coupons over ``size`` trials of shard ``shard``"""
    m, n = config.m, config.n
    counts = np.zeros(m + 1, dtype=np.int64)
    if n == 0:
        counts[0] = size
        return counts
    rng = shard_generator(config.seed, shard)
    # one m-wide mask per trial in the chunk, reused across chunks
    width = min(config.chunk_trials, size)
    seen = np.zeros((width, m), dtype=bool)
    rows = np.arange(width)
    remaining = size
    while remaining:
        batch = min(width, remaining)
        mask = seen[:batch]
        mask.fill(False)
        for _ in range(n):
            mask[rows[:batch], rng.integers(0, m, size=batch, dtype=np.int64)] = True
        counts += np.bincount(mask.sum(axis=1), minlength=m + 1)
        remaining -= batch
    logger.debug(f"Shard {shard}: {size} trials")
    return counts


def simulate(config, workers=None):
    """
    Run every shard of ``config`` and merge the counts. ``workers`` > 1 runs
    shards on a thread pool; the merged counts are the same either way.
    """
    if workers is None:
        workers = settings.COLLECTOR_LAB['WORKERS']
    sizes = shard_sizes(config)
    jobs = [(s, size) for s, size in enumerate(sizes) if size]

    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: simulate_shard(config, *job), jobs))
    else:
        parts = [simulate_shard(config, s, size) for s, size in jobs]

    counts = np.sum(parts, axis=0)
    logger.info(
        f"Simulated m={config.m} n={config.n} trials={config.trials} "
        f"over {len(jobs)} shards with {workers} workers"
    )
    return EmpiricalPmf(config=config, counts=tuple(int(c) for c in counts))


def pool_bins(observed, expected, min_expected):
    """
    Merge bins with expected count below ``min_expected`` into their neighbour
    toward k = m; a short final group is merged back into the one before it.
    """
    groups = []
    acc_o, acc_e = 0.0, 0.0
    for o, e in zip(observed, expected):
        acc_o += o
        acc_e += e
        if acc_e >= min_expected:
            groups.append([acc_o, acc_e])
            acc_o, acc_e = 0.0, 0.0
    if acc_o or acc_e:
        if groups:
            groups[-1][0] += acc_o
            groups[-1][1] += acc_e
        else:
            groups.append([acc_o, acc_e])
    return groups


def compare(emp, exact):
    """Fit statistics of an empirical pmf against a row with the same (m, n)"""
    if (emp.m, emp.n) != (exact.m, exact.n):
        raise DomainError(
            f"cannot compare (m={emp.m}, n={emp.n}) against (m={exact.m}, n={exact.n})"
        )
    probabilities = [float(p) for p in exact.probabilities]
    if len(probabilities) != emp.m + 1:
        raise DomainError(f"expected {emp.m + 1} probabilities, got {len(probabilities)}")

    trials = emp.config.trials
    deviations = [abs(f - p) for f, p in zip(emp.freqs, probabilities)]
    options = settings.COLLECTOR_LAB

    groups = pool_bins(
        emp.counts,
        [trials * p for p in probabilities],
        options['CHI_SQUARE_MIN_EXPECTED'],
    )
    chi_square = 0.0
    for o, e in groups:
        if e > 0:
            chi_square += (o - e) ** 2 / e
        elif o > 0:
            chi_square = math.inf
    dof = len(groups) - 1
    if dof > 0:
        critical = float(stats.chi2.ppf(options['CHI_SQUARE_LEVEL'], dof))
        p_value = float(stats.chi2.sf(chi_square, dof))
    else:
        critical, p_value = 0.0, 1.0

    return FitReport(
        m=emp.m,
        n=emp.n,
        trials=trials,
        max_abs_deviation=max(deviations),
        total_variation=0.5 * math.fsum(deviations),
        chi_square=chi_square,
        bins=len(groups),
        dof=dof,
        critical_value=critical,
        p_value=p_value,
    )
