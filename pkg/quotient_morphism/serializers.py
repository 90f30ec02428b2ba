"""
Quotient Serializers
JSON representation of morphisms and quotient results
"""

from rest_framework import serializers

from metric_graph.serializers import CurveSerializer


class MorphismSerializer(serializers.BaseSerializer):

    def to_representation(self, instance):
        edge_map = {}
        for edge_id, assignment in instance.edge_map:
            if assignment.collapsed:
                edge_map[edge_id] = {'vertex': assignment.vertex}
            else:
                edge_map[edge_id] = {'to': assignment.target, 'reversed': assignment.reversed}
        return {
            'vertex_map': dict(instance.vertex_map),
            'edge_map': edge_map,
            'dilations': {edge_id: a.dilation for edge_id, a in instance.edge_map},
        }


class QuotientSerializer(serializers.BaseSerializer):
    """{"quotient": <curve>, "phi": <morphism from the invariant model>, "degree": int}."""

    def to_representation(self, instance):
        return {
            'invariant_model': CurveSerializer(instance.invariant_model).data,
            'quotient': CurveSerializer(instance.quotient).data,
            'phi': MorphismSerializer(instance.morphism).data,
            'degree': instance.degree,
        }
