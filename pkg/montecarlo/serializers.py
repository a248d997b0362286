# montecarlo/serializers.py
from rest_framework import serializers

from .models import SEED_LIMIT


class SimulateRequestSerializer(serializers.Serializer):
    """Arguments of the `simulate` subcommand"""
    m = serializers.IntegerField(min_value=1)
    n = serializers.IntegerField(min_value=0)
    trials = serializers.IntegerField(min_value=1)
    seed = serializers.IntegerField(min_value=0, max_value=SEED_LIMIT - 1, required=False)
    workers = serializers.IntegerField(min_value=1, required=False)
    compare_exact = serializers.BooleanField(default=False)


class SimConfigSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    n = serializers.IntegerField()
    trials = serializers.IntegerField()
    seed = serializers.IntegerField()
    shards = serializers.IntegerField()
    chunk_trials = serializers.IntegerField()


class EmpiricalBinSerializer(serializers.Serializer):
    """One row `k,count,freq`"""
    k = serializers.IntegerField()
    count = serializers.IntegerField()
    freq = serializers.FloatField()


class FitReportSerializer(serializers.Serializer):
    max_abs_deviation = serializers.FloatField()
    total_variation = serializers.FloatField()
    chi_square = serializers.FloatField()
    bins = serializers.IntegerField()
    dof = serializers.IntegerField()
    critical_value = serializers.FloatField()
    p_value = serializers.FloatField()
