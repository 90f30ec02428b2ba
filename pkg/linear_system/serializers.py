"""
Linear System Serializers
JSON representation of generator sets, tropical combinations and membership answers
"""

from rest_framework import serializers

from divisors_functions.serializers import FunctionSerializer
from metric_graph.scalars import format_scalar


class GeneratorSetSerializer(serializers.BaseSerializer):
    """
    {"generators": [<function>], "provenance": [str], "empty_system": bool}.
    Generators are read on the curve of the context passed as "ctx".
    """

    def to_representation(self, instance):
        ctx = self.context['ctx']
        return {
            'generators': [FunctionSerializer(ctx.on_curve(f).normalized()).data for f in instance],
            'provenance': list(instance.provenance),
            'empty_system': instance.empty_system,
        }


class CombinationSerializer(serializers.BaseSerializer):

    def to_representation(self, instance):
        return {
            'terms': [
                {'generator': index, 'coefficient': format_scalar(coefficient)}
                for index, coefficient in instance.terms
            ],
        }


class MembershipSerializer(serializers.Serializer):
    test = serializers.ChoiceField(choices=['r', 'rk', 's', 'sk', 'extremal'])
    member = serializers.BooleanField()
