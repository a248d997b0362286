from dataclasses import dataclass

from django.conf import settings

from numeric_core.exceptions import DomainError

SEED_LIMIT = 2 ** 64


@dataclass(frozen=True)
class SimConfig:
    """
    One simulation: ``trials`` independent runs of ``n`` uniform draws from
    ``m`` coupon types. The shard layout (``shards``, ``chunk_trials``) is part
    of the identity: the same config always yields the same counts.
    """
    m: int
    n: int
    trials: int
    seed: int
    shards: int
    chunk_trials: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError(f"m must be >= 1, got {self.m}")
        if self.n < 0:
            raise DomainError(f"n must be >= 0, got {self.n}")
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not 0 <= self.seed < SEED_LIMIT:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.shards < 1 or self.chunk_trials < 1:
            raise DomainError("shards and chunk_trials must be >= 1")

    @classmethod
    def create(cls, m, n, trials, seed=None, shards=None, chunk_trials=None):
        """Build a config, taking unset fields from settings.COLLECTOR_LAB"""
        options = settings.COLLECTOR_LAB
        return cls(
            m=m,
            n=n,
            trials=trials,
            seed=options['DEFAULT_SEED'] if seed is None else seed,
            shards=options['SIM_SHARDS'] if shards is None else shards,
            chunk_trials=options['SIM_CHUNK_TRIALS'] if chunk_trials is None else chunk_trials,
        )


@dataclass(frozen=True)
class EmpiricalPmf:
    """counts[k] = number of trials that saw exactly k distinct coupons"""
    config: SimConfig
    counts: tuple

    @property
    def m(self):
        return self.config.m

    @property
    def n(self):
        return self.config.n

    @property
    def freqs(self):
        trials = self.config.trials
        return tuple(count / trials for count in self.counts)

    @property
    def probabilities(self):
        return self.freqs


@dataclass(frozen=True)
class FitReport:
    m: int
    n: int
    trials: int
    max_abs_deviation: float
    total_variation: float
    chi_square: float
    bins: int
    dof: int
    critical_value: float
    p_value: float

    def passed(self, tolerance):
        """Max deviation under ``tolerance`` and chi-square under the critical value"""
        if self.max_abs_deviation >= tolerance:
            return False
        return self.dof == 0 or self.chi_square <= self.critical_value
