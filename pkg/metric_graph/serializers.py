"""
Metric Graph Serializers
Django REST Framework serializers for curve and point JSON documents
"""

from rest_framework import serializers
from rest_framework.exceptions import ErrorDetail

from troplin.exceptions import InvalidModelError, PointOffCurveError
from .graph import Edge, MetricGraphModel, PointRef, Vertex
from .scalars import INF, format_scalar, is_infinite, to_scalar


class RationalField(serializers.Field):
    """
    Exact rational written as a "p/q" string in lowest terms, whole numbers as
    plain integers ("2", not "2/1"); optionally "+inf" / "-inf".
    """

    default_error_messages = {
        'malformed_rational': 'Malformed rational "{value}".',
        'infinite_not_allowed': 'An infinite value is not allowed here.',
    }

    def __init__(self, allow_infinite=False, **kwargs):
        self.allow_infinite = allow_infinite
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if isinstance(data, (bool, float)) or data is None:
            self.fail('malformed_rational', value=data)
        try:
            value = to_scalar(data)
        except (ValueError, ZeroDivisionError, TypeError):
            self.fail('malformed_rational', value=data)
        if is_infinite(value) and not self.allow_infinite:
            self.fail('infinite_not_allowed')
        return value

    def to_representation(self, value):
        return format_scalar(value)


class LengthField(RationalField):
    default_error_messages = {
        **RationalField.default_error_messages,
        'nonpositive_length': 'Edge length must be positive, got "{value}".',
    }

    def __init__(self, **kwargs):
        super().__init__(allow_infinite=True, **kwargs)

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if value <= 0:
            self.fail('nonpositive_length', value=data)
        return value

    def to_representation(self, value):
        return 'inf' if value == INF else format_scalar(value)


class VertexSerializer(serializers.Serializer):
    id = serializers.CharField()
    at_infinity = serializers.BooleanField(default=False)


class EdgeSerializer(serializers.Serializer):
    id = serializers.CharField()
    ends = serializers.ListField(child=serializers.CharField(), min_length=2, max_length=2)
    length = LengthField()
    parent = serializers.CharField(required=False)


class CurveSerializer(serializers.Serializer):
    """
    Curve document: {"vertices": [{"id", "at_infinity"}], "edges": [{"id", "ends", "length"}]}.
    Validated data carries the built model under "model".
    """
    vertices = VertexSerializer(many=True, allow_empty=False)
    edges = EdgeSerializer(many=True, required=False, default=list)

    def validate(self, attrs):
        errors = []
        vertex_ids = [v['id'] for v in attrs['vertices']]
        known = set(vertex_ids)
        if len(known) != len(vertex_ids):
            errors.append(ErrorDetail('Duplicate vertex id.', code='duplicate_id'))
        edge_ids = [e['id'] for e in attrs['edges']]
        if len(set(edge_ids)) != len(edge_ids):
            errors.append(ErrorDetail('Duplicate edge id.', code='duplicate_id'))
        for index, edge in enumerate(attrs['edges']):
            for end in edge['ends']:
                if end not in known:
                    errors.append(ErrorDetail(
                        f'edges[{index}] ({edge["id"]}) references unknown vertex "{end}".',
                        code='dangling_id',
                    ))
        if errors:
            raise serializers.ValidationError(errors)
        try:
            attrs['model'] = MetricGraphModel.build(
                [Vertex(v['id'], v['at_infinity']) for v in attrs['vertices']],
                [Edge(e['id'], e['ends'][0], e['ends'][1], e['length']) for e in attrs['edges']],
            )
        except InvalidModelError as exc:
            raise serializers.ValidationError(str(exc), code=exc.code)
        return attrs

    def to_representation(self, instance):
        return {
            'vertices': [
                {'id': v.id, 'at_infinity': v.at_infinity} for v in instance.vertices
            ],
            'edges': [
                {'id': e.id, 'ends': [e.tail, e.head], 'length': LengthField().to_representation(e.length)}
                for e in instance.edges
            ],
        }


class PointSerializer(serializers.Serializer):
    """{"vertex": id} or {"edge": id, "offset": "p/q", "anchor": id}."""
    vertex = serializers.CharField(required=False)
    edge = serializers.CharField(required=False)
    offset = RationalField(required=False, allow_infinite=True)
    anchor = serializers.CharField(required=False)

    def validate(self, attrs):
        if 'vertex' in attrs:
            if 'edge' in attrs:
                raise serializers.ValidationError('Give either a vertex or an edge position.', code='invalid_point')
            return PointRef.at_vertex(attrs['vertex'])
        if 'edge' not in attrs or 'offset' not in attrs:
            raise serializers.ValidationError('An edge position needs "edge" and "offset".', code='invalid_point')
        return PointRef(edge=attrs['edge'], offset=attrs['offset'], anchor=attrs.get('anchor'))

    def to_representation(self, instance):
        if instance.is_vertex:
            return {'vertex': instance.vertex}
        return {'edge': instance.edge, 'offset': format_scalar(instance.offset), 'anchor': instance.anchor}


def resolve_point(model, point):
    """Normalize a parsed point against a model, as a DRF validation error."""
    try:
        return model.normalize(point)
    except PointOffCurveError as exc:
        raise serializers.ValidationError(str(exc), code='point_off_curve')


class SubgraphSerializer(serializers.BaseSerializer):
    """{"edges": [id], "vertices": [id], "intervals": [{"edge", "start", "end"}]}."""

    def to_representation(self, instance):
        return {
            'edges': sorted(instance.edges),
            'vertices': sorted(instance.vertices),
            'intervals': [
                {'edge': edge_id, 'start': format_scalar(start), 'end': format_scalar(end)}
                for edge_id, start, end in sorted(instance.intervals, key=lambda i: (i[0], i[1]))
            ],
        }
