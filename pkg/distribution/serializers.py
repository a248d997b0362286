# distribution/serializers.py
from rest_framework import serializers

from numeric_core.services import rational_to_str

from .models import Backend


class PmfRequestSerializer(serializers.Serializer):
    """Arguments of the `pmf` subcommand"""
    m = serializers.IntegerField(min_value=1)
    n_max = serializers.IntegerField(min_value=0)
    backend = serializers.ChoiceField(choices=Backend.choices, default=Backend.EXACT)


class PmfEntrySerializer(serializers.Serializer):
    """
    One row `m,n,k,p_num,p_den,p_float`; the exact columns are empty for the
    float backend. JSON rows also carry `p` as "num/den".
    """
    m = serializers.IntegerField()
    n = serializers.IntegerField()
    k = serializers.IntegerField()
    p_num = serializers.SerializerMethodField()
    p_den = serializers.SerializerMethodField()
    p_float = serializers.FloatField()
    p = serializers.SerializerMethodField()

    def get_p(self, obj):
        if obj.get('p') is None:
            return None
        return rational_to_str(obj['p'])

    def get_p_num(self, obj):
        if obj.get('p') is None:
            return None
        return str(obj['p'].numerator)

    def get_p_den(self, obj):
        if obj.get('p') is None:
            return None
        return str(obj['p'].denominator)
