from collectorlab.renderers import render_csv, render_json
from collectorlab.commands import LabCommand

from distribution.models import Route
from distribution.services import closed_form_row
from montecarlo.models import SimConfig
from montecarlo.serializers import (
    EmpiricalBinSerializer,
    FitReportSerializer,
    SimConfigSerializer,
    SimulateRequestSerializer,
)
from montecarlo.services import compare, simulate


class Command(LabCommand):
    help = 'Simulate T trials of N draws from M coupon types and count distinct coupons.'
    request_serializer_class = SimulateRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--m', type=int, required=True, metavar='M')
        parser.add_argument('--n', type=int, required=True, metavar='N')
        parser.add_argument('--trials', type=int, required=True, metavar='T')
        parser.add_argument('--seed', type=int, default=None, metavar='S')
        parser.add_argument('--workers', type=int, default=None)
        parser.add_argument('--compare-exact', action='store_true',
                            help='Append fit statistics against the exact distribution')

    def produce(self, params, fmt):
        config = SimConfig.create(params['m'], params['n'], params['trials'], seed=params.get('seed'))
        emp = simulate(config, workers=params.get('workers'))
        bins = [
            {'k': k, 'count': count, 'freq': freq}
            for k, (count, freq) in enumerate(zip(emp.counts, emp.freqs))
        ]
        rows = EmpiricalBinSerializer(bins, many=True).data

        report = None
        if params['compare_exact']:
            report = FitReportSerializer(compare(emp, closed_form_row(config.m, config.n, Route.DP))).data

        if fmt == 'json':
            document = {'config': SimConfigSerializer(config).data, 'rows': rows}
            if report is not None:
                document['comparison'] = report
            return render_json(document)

        text = render_csv(rows, ['k', 'count', 'freq'])
        if report is not None:
            metrics = [{'metric': name, 'value': value} for name, value in report.items()]
            text += '\n' + render_csv(metrics, ['metric', 'value'])
        return text
