from collectorlab.commands import LabCommand
from collectorlab.renderers import iter_csv, render

from distribution.models import Backend
from distribution.serializers import PmfEntrySerializer, PmfRequestSerializer
from distribution.services import check_table_size, iter_dp_rows, iter_float_rows

FIELDS = ['m', 'n', 'k', 'p_num', 'p_den', 'p_float']


class Command(LabCommand):
    help = 'Emit p[n][k], the law of the number of distinct coupons after n draws.'
    request_serializer_class = PmfRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--m', type=int, required=True, metavar='M')
        parser.add_argument('--n-max', type=int, required=True, metavar='N')
        backend = parser.add_mutually_exclusive_group()
        backend.add_argument('--exact', dest='backend', action='store_const', const=Backend.EXACT.value)
        backend.add_argument('--float', dest='backend', action='store_const', const=Backend.FLOAT.value)

    def entries(self, m, n_max, backend):
        if backend == Backend.FLOAT:
            for n, row in iter_float_rows(m, n_max):
                for k in range(m + 1):
                    yield {'m': m, 'n': n, 'k': k, 'p': None, 'p_float': float(row[k])}
            return
        for n, row in iter_dp_rows(m, n_max):
            for k, p in enumerate(row):
                yield {'m': m, 'n': n, 'k': k, 'p': p, 'p_float': float(p)}

    def produce(self, params, fmt):
        m, n_max = params['m'], params['n_max']
        entries = self.entries(m, n_max, params['backend'])
        if fmt == 'csv':
            # one row of state at a time, whatever the horizon
            return iter_csv((PmfEntrySerializer(entry).data for entry in entries), FIELDS)
        check_table_size(m, n_max)
        rows = PmfEntrySerializer(list(entries), many=True).data
        return render(rows, FIELDS, fmt)
