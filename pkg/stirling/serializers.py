# stirling/serializers.py
from rest_framework import serializers


class StirlingRequestSerializer(serializers.Serializer):
    """Arguments of the `stirling` subcommand"""
    n_max = serializers.IntegerField(min_value=1)


class StirlingEntrySerializer(serializers.Serializer):
    """One CSV row `n,k,a` with a as exact decimal digits"""
    n = serializers.IntegerField()
    k = serializers.IntegerField()
    a = serializers.SerializerMethodField()

    def get_a(self, obj):
        return str(obj['a'])
