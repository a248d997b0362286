# genfun/serializers.py
import math

from rest_framework import serializers


class EgfRequestSerializer(serializers.Serializer):
    """Arguments of the `egf` subcommand"""
    m = serializers.IntegerField(min_value=1)
    order = serializers.IntegerField(min_value=0)
    at = serializers.CharField(required=False)

    def validate_at(self, value):
        parts = value.split(',')
        if len(parts) != 2:
            raise serializers.ValidationError("Expected X,Y")
        try:
            x, y = (float(part) for part in parts)
        except ValueError:
            raise serializers.ValidationError(f"Not a pair of numbers: {value}")
        if not (math.isfinite(x) and math.isfinite(y)):
            raise serializers.ValidationError("X and Y must be finite")
        return x, y


class EgfCoefficientSerializer(serializers.Serializer):
    """One CSV row `n,k,coeff_num,coeff_den` of g_n(y)"""
    n = serializers.IntegerField()
    k = serializers.IntegerField()
    coeff_num = serializers.SerializerMethodField()
    coeff_den = serializers.SerializerMethodField()

    def get_coeff_num(self, obj):
        return str(obj['coeff'].numerator)

    def get_coeff_den(self, obj):
        return str(obj['coeff'].denominator)


class EgfEvaluationSerializer(serializers.Serializer):
    m = serializers.IntegerField()
    order = serializers.IntegerField()
    x = serializers.FloatField()
    y = serializers.FloatField()
    closed = serializers.FloatField()
    series = serializers.FloatField()
