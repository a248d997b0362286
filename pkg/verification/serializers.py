# verification/serializers.py
from rest_framework import serializers

from montecarlo.models import SEED_LIMIT

from .models import CheckStatus


class VerifyRequestSerializer(serializers.Serializer):
    """Arguments of the `verify` subcommand"""
    m_max = serializers.IntegerField(min_value=1, required=False)
    n_max = serializers.IntegerField(min_value=0, required=False)
    trials = serializers.IntegerField(min_value=1, required=False)
    seed = serializers.IntegerField(min_value=0, max_value=SEED_LIMIT - 1, required=False)
    stirling_n_max = serializers.IntegerField(min_value=1, required=False)
    workers = serializers.IntegerField(min_value=1, required=False)
    skip_montecarlo = serializers.BooleanField(default=False)


class CheckResultSerializer(serializers.Serializer):
    check = serializers.CharField(source='name')
    scope = serializers.SerializerMethodField()
    status = serializers.ChoiceField(choices=CheckStatus.choices)
    deviation = serializers.SerializerMethodField()

    def get_scope(self, obj):
        return ' '.join(f"{key}={value}" for key, value in obj.scope.items())

    def get_deviation(self, obj):
        if isinstance(obj.deviation, float):
            return obj.deviation
        return str(obj.deviation)


class VerifyReportSerializer(serializers.Serializer):
    overall = serializers.ChoiceField(choices=CheckStatus.choices)
    checks = CheckResultSerializer(many=True)
