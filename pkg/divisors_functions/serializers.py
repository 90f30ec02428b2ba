"""
Divisor and Function Serializers
Django REST Framework serializers for divisor and rational-function JSON documents
"""

from rest_framework import serializers
from rest_framework.exceptions import ErrorDetail

from metric_graph.embedding import Chart, embed_refinement
from metric_graph.graph import PointRef
from metric_graph.scalars import INF, NEG_INF, format_scalar, is_infinite
from metric_graph.serializers import (
    CurveSerializer, PointSerializer, RationalField, SubgraphSerializer, resolve_point,
)
from troplin.exceptions import TroplinError
from .divisor import Divisor
from .functions import PLFunction, transport


class DivisorTermSerializer(serializers.Serializer):
    point = PointSerializer()
    coeff = serializers.IntegerField()

    def validate(self, attrs):
        attrs['point'] = resolve_point(self.context['model'], attrs['point'])
        return attrs


class DivisorSerializer(serializers.ListSerializer):
    """[{"point": {...}, "coeff": int}] on the model passed in the context."""
    child = DivisorTermSerializer()

    def validate(self, attrs):
        return Divisor.from_terms(self.context['model'], [(a['point'], a['coeff']) for a in attrs])

    def to_representation(self, instance):
        return [
            {'point': PointSerializer(point).data, 'coeff': coefficient}
            for point, coefficient in instance.terms
        ]


class SlopeSerializer(serializers.Serializer):
    slope = serializers.IntegerField()

    def get_fields(self):
        fields = super().get_fields()
        fields['from'] = serializers.CharField()
        return fields


class FunctionSerializer(serializers.Serializer):
    """
    {"refinement": <curve>, "values": {vertex: value}, "slopes": {edge: {"slope": int, "from": vertex}}}
    The refinement subdivides the curve in the context; its edges name their
    parent edge with "parent" unless they keep the parent's id.
    """
    refinement = CurveSerializer()
    values = serializers.DictField(child=RationalField(allow_infinite=True))
    slopes = serializers.DictField(child=SlopeSerializer())

    def validate(self, attrs):
        model = self.context['model']
        fine = attrs['refinement']['model']
        parents = {e['id']: e['parent'] for e in attrs['refinement']['edges'] if 'parent' in e}
        try:
            embedding = embed_refinement(fine, model, parents)
        except TroplinError as exc:
            raise serializers.ValidationError({'refinement': [ErrorDetail(str(exc), code=exc.code)]})
        errors = []
        values = attrs['values']
        for vertex in fine.finite_vertices:
            if vertex.id not in values:
                errors.append(ErrorDetail(f'missing value at vertex {vertex.id}', code='missing_value'))
            elif is_infinite(values[vertex.id]):
                errors.append(ErrorDetail(f'infinite value at finite vertex {vertex.id}', code='invalid_function'))
        ray_slopes = {}
        for edge in fine.edges:
            entry = attrs['slopes'].get(edge.id)
            if entry is None:
                errors.append(ErrorDetail(f'missing slope on edge {edge.id}', code='missing_slope'))
                continue
            start = entry['from']
            if start not in (edge.tail, edge.head):
                errors.append(ErrorDetail(f'{start} is not an end of {edge.id}', code='dangling_id'))
                continue
            slope = entry['slope'] if start == edge.tail else -entry['slope']
            if edge.is_infinite:
                ray_slopes[edge.id] = slope
                far = values.get(edge.head)
                expected = INF if slope > 0 else NEG_INF if slope < 0 else values.get(edge.tail)
                if far is not None and expected is not None and far != expected:
                    errors.append(ErrorDetail(
                        f'value at {edge.head} contradicts the slope of {edge.id}', code='inconsistent_function'
                    ))
                continue
            if edge.tail in values and edge.head in values and not is_infinite(values[edge.tail]):
                if values[edge.head] != values[edge.tail] + slope * edge.length:
                    errors.append(ErrorDetail(
                        f'values and slope disagree on edge {edge.id}', code='inconsistent_function'
                    ))
        if errors:
            raise serializers.ValidationError(errors)
        try:
            function = PLFunction.from_samples(fine, values, {}, ray_slopes)
        except TroplinError as exc:
            raise serializers.ValidationError(str(exc), code=exc.code)
        return transport(function, Chart.up(embedding), model)

    def to_representation(self, instance):
        fine, embedding = instance.refinement()
        refinement = CurveSerializer(fine).data
        for entry in refinement['edges']:
            entry['parent'] = embedding.placements[entry['id']].edge
        values = {
            v.id: format_scalar(instance(embedding.to_coarse(PointRef.at_vertex(v.id))))
            for v in fine.vertices
        }
        slopes = {}
        for edge in fine.edges:
            placement = embedding.placements[edge.id]
            slopes[edge.id] = {'slope': instance.slope_at(placement.edge, placement.start), 'from': edge.tail}
        return {'refinement': refinement, 'values': values, 'slopes': slopes}


class DecompositionSerializer(serializers.BaseSerializer):
    """{"constant": "p/q", "moves": [{"source": <subgraph>, "reach": "p/q" | "+inf", "coefficient": int}]}."""

    def to_representation(self, instance):
        return {
            'constant': format_scalar(instance.constant),
            'moves': [
                {
                    'source': SubgraphSerializer(move.source).data,
                    'reach': format_scalar(move.reach),
                    'coefficient': coefficient,
                }
                for move, coefficient in instance.terms
            ],
        }
