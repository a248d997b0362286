from collectorlab.commands import LabCommand
from collectorlab.renderers import render

from genfun.serializers import (
    EgfCoefficientSerializer,
    EgfEvaluationSerializer,
    EgfRequestSerializer,
)
from genfun.services import egf_closed_eval, egf_expand


class Command(LabCommand):
    help = 'Expand G_m(x, y) = [1 - y(1 - e^(x/m))]^m to order N, or evaluate it at X,Y.'
    request_serializer_class = EgfRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--m', type=int, required=True, metavar='M')
        parser.add_argument('--order', type=int, required=True, metavar='N')
        parser.add_argument('--at', metavar='X,Y', default=None,
                            help='Evaluate instead of listing the exact terms')

    def produce(self, params, fmt):
        m, order = params['m'], params['order']
        series = egf_expand(m, order)
        if 'at' in params:
            x, y = params['at']
            evaluation = {
                'm': m,
                'order': order,
                'x': x,
                'y': y,
                'closed': egf_closed_eval(m, x, y),
                'series': series.evaluate(x, y),
            }
            rows = [EgfEvaluationSerializer(evaluation).data]
            return render(rows, list(EgfEvaluationSerializer().fields), fmt)

        entries = [
            {'n': n, 'k': k, 'coeff': series.term(n).coefficient(k)}
            for n in range(order + 1)
            for k in range(m + 1)
        ]
        rows = EgfCoefficientSerializer(entries, many=True).data
        return render(rows, ['n', 'k', 'coeff_num', 'coeff_den'], fmt)
