from collectorlab.commands import LabCommand
from collectorlab.renderers import render

from stirling.serializers import StirlingEntrySerializer, StirlingRequestSerializer
from stirling.services import stirling_table


class Command(LabCommand):
    help = 'Emit the Stirling numbers a[n][k] (second kind) for 1 <= k <= n <= N.'
    request_serializer_class = StirlingRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--n-max', type=int, required=True, metavar='N')

    def produce(self, params, fmt):
        table = stirling_table(params['n_max'])
        entries = [{'n': n, 'k': k, 'a': a} for n, k, a in table.rows()]
        rows = StirlingEntrySerializer(entries, many=True).data
        return render(rows, ['n', 'k', 'a'], fmt)
