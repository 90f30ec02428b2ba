"""
Group Serializers
Django REST Framework serializers for group documents
"""

from rest_framework import serializers
from rest_framework.exceptions import ErrorDetail

from metric_graph.serializers import CurveSerializer, PointSerializer
from troplin.exceptions import InvalidGroupError, InvalidIsometryError
from .group import close_group
from .isometry import Isometry


class EdgeImageSerializer(serializers.Serializer):
    to = serializers.CharField()
    reversed = serializers.BooleanField(default=False)


class IsometrySerializer(serializers.Serializer):
    vertex_map = serializers.DictField(child=serializers.CharField())
    edge_map = serializers.DictField(child=EdgeImageSerializer())

    def validate(self, attrs):
        return Isometry.from_maps(
            attrs['vertex_map'],
            {e: (image['to'], image['reversed']) for e, image in attrs['edge_map'].items()},
        )

    def to_representation(self, instance):
        return {
            'vertex_map': dict(instance.vertex_map),
            'edge_map': {e: {'to': image, 'reversed': rev} for e, image, rev in instance.edge_map},
        }


class GroupSerializer(serializers.Serializer):
    """
    {"model": <curve>, "generators": [{"vertex_map": {...}, "edge_map": {...}}]}.
    Validated data is the closed GroupAction on the model.
    """
    model = CurveSerializer()
    generators = IsometrySerializer(many=True, required=False, default=list)

    def validate(self, attrs):
        model = attrs['model']['model']
        errors = []
        for index, generator in enumerate(attrs['generators']):
            try:
                generator.validate(model)
            except InvalidIsometryError as exc:
                errors.append(ErrorDetail(f'generators[{index}]: {exc}', code=exc.code))
        if errors:
            raise serializers.ValidationError({'generators': errors})
        try:
            return close_group(model, attrs['generators'])
        except InvalidGroupError as exc:
            raise serializers.ValidationError(str(exc), code=exc.code)

    def to_representation(self, instance):
        return {
            'model': CurveSerializer(instance.model).data,
            'generators': [IsometrySerializer(g).data for g in instance.generators],
        }


class OrbitDataSerializer(serializers.BaseSerializer):
    def to_representation(self, instance):
        return {
            'order': instance.order,
            'vertex_orbits': [list(o) for o in instance.vertex_orbits],
            'edge_orbits': [list(o) for o in instance.edge_orbits],
            'vertex_stabilizers': instance.vertex_stabilizers,
            'edge_stabilizers': instance.edge_stabilizers,
        }


def points_representation(points):
    return [PointSerializer(p).data for p in points]
