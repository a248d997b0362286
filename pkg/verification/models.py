from dataclasses import dataclass, field

from django.db import models
from django.utils.translation import gettext_lazy as _

EXACT = 'exact'


class CheckStatus(models.TextChoices):
    PASS = 'pass', _('Pass')
    FAIL = 'fail', _('Fail')


@dataclass(frozen=True)
class CheckResult:
    """
    One verification check. ``deviation`` is the worst-case float deviation,
    ``'exact'`` for a passing zero-tolerance check, or a description of the
    first mismatch.
    """
    name: str
    scope: dict = field(default_factory=dict)
    status: str = CheckStatus.PASS
    deviation: object = EXACT

    @property
    def passed(self):
        return self.status == CheckStatus.PASS


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def overall(self):
        return CheckStatus.PASS if self.passed else CheckStatus.FAIL
