from django.core.management.base import CommandError

from collectorlab.commands import LabCommand
from collectorlab.renderers import render, render_json

from numeric_core.exceptions import DomainError

from verification.serializers import CheckResultSerializer, VerifyReportSerializer, VerifyRequestSerializer
from verification.services import VerificationSuite

FIELDS = ['check', 'scope', 'status', 'deviation']


class Command(LabCommand):
    help = 'Cross-check every route against every other and report pass/fail per check.'
    request_serializer_class = VerifyRequestSerializer
    formats = ('table', 'json', 'csv')
    default_format = 'table'

    def add_command_arguments(self, parser):
        parser.add_argument('--m-max', type=int, default=None, metavar='M')
        parser.add_argument('--n-max', type=int, default=None, metavar='N')
        parser.add_argument('--trials', type=int, default=None, metavar='T')
        parser.add_argument('--seed', type=int, default=None, metavar='S')
        parser.add_argument('--stirling-n-max', type=int, default=None, metavar='N')
        parser.add_argument('--workers', type=int, default=None)
        parser.add_argument('--skip-montecarlo', action='store_true')

    def build_report(self, params):
        suite = VerificationSuite(
            m_max=params.get('m_max'),
            n_max=params.get('n_max'),
            trials=params.get('trials'),
            seed=params.get('seed'),
            stirling_n_max=params.get('stirling_n_max'),
            workers=params.get('workers'),
            montecarlo=not params['skip_montecarlo'],
        )
        return suite.get_all_checks()

    def handle(self, *args, **options):
        params = self.validate(options)
        try:
            report = self.build_report(params)
        except DomainError as e:
            raise CommandError(str(e), returncode=2)
        fmt = options['format']
        if fmt == 'json':
            text = render_json(VerifyReportSerializer(report).data)
        else:
            rows = CheckResultSerializer(report.checks, many=True).data
            text = render(rows, FIELDS, fmt)
            if fmt == 'table':
                text += f"\noverall: {report.overall}\n"
        self.emit(text, options.get('output'))
        if not report.passed:
            raise CommandError('verification failed', returncode=1)
