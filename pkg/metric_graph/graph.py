"""
Metric Graph Models
Vertices, edges, points and the model of a tropical curve
"""

import functools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import networkx as nx

from troplin.exceptions import InvalidModelError, PointOffCurveError
from .scalars import INF, is_infinite


@dataclass(frozen=True)
class Vertex:
    id: str
    at_infinity: bool = False


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    length: object

    @property
    def is_infinite(self):
        return is_infinite(self.length)

    @property
    def is_loop(self):
        return self.tail == self.head


@functools.total_ordering
@dataclass(frozen=True)
class PointRef:
    """
    A point of the curve: a model vertex, or an interior position of an edge.
    Edge positions are always normalized to an offset measured from the tail.
    """
    vertex: str = None
    edge: str = None
    offset: Fraction = None
    anchor: str = None

    @classmethod
    def at_vertex(cls, vertex_id):
        return cls(vertex=vertex_id)

    @property
    def is_vertex(self):
        return self.vertex is not None

    def sort_key(self):
        if self.is_vertex:
            return (0, self.vertex, Fraction(0))
        return (1, self.edge, self.offset)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if self.is_vertex:
            return f'<{self.vertex}>'
        return f'<{self.edge}@{self.offset}>'


@dataclass(frozen=True, eq=True)
class MetricGraphModel:
    """
    A finite connected multigraph with exact lengths presenting a tropical curve.
    Infinite edges run from a finite tail to a valence-one vertex at infinity.
    """
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        self._validate()

    @classmethod
    def build(cls, vertices, edges):
        """Build a model, orienting infinite edges away from their finite end."""
        vertices = tuple(sorted(vertices, key=lambda v: v.id))
        flags = {v.id: v.at_infinity for v in vertices}
        normalized = []
        for edge in edges:
            if flags.get(edge.tail) and not flags.get(edge.head):
                edge = Edge(edge.id, edge.head, edge.tail, edge.length)
            normalized.append(edge)
        return cls(vertices, tuple(sorted(normalized, key=lambda e: e.id)))

    def _validate(self):
        if not self.vertices:
            raise InvalidModelError('a curve needs at least one vertex', code='empty_model')
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            raise InvalidModelError('duplicate vertex id', code='duplicate_id')
        edge_ids = [e.id for e in self.edges]
        if len(set(edge_ids)) != len(edge_ids):
            raise InvalidModelError('duplicate edge id', code='duplicate_id')
        known = set(ids)
        for edge in self.edges:
            if edge.tail not in known or edge.head not in known:
                raise InvalidModelError(f'edge {edge.id} references an unknown vertex', code='dangling_id')
            if edge.length is None or edge.length <= 0:
                raise InvalidModelError(f'edge {edge.id} has a nonpositive length', code='nonpositive_length')
            if edge.is_infinite:
                if edge.length != INF:
                    raise InvalidModelError(f'edge {edge.id} has length -inf', code='nonpositive_length')
                far = self._vertex_index.get(edge.head)
                near = self._vertex_index.get(edge.tail)
                if not far.at_infinity or near.at_infinity:
                    raise InvalidModelError(
                        f'infinite edge {edge.id} must join a finite vertex to a vertex at infinity',
                        code='invalid_infinite_edge',
                    )
        for vertex in self.vertices:
            if not vertex.at_infinity:
                continue
            incident = self.incident(vertex.id)
            if len(incident) != 1 or not incident[0][0].is_infinite:
                raise InvalidModelError(
                    f'vertex {vertex.id} at infinity must be the end of exactly one infinite edge',
                    code='invalid_infinite_edge',
                )
        if not nx.is_connected(self.nx_graph()):
            raise InvalidModelError('the graph is disconnected', code='disconnected')

    @cached_property
    def _vertex_index(self):
        return {v.id: v for v in self.vertices}

    @cached_property
    def _edge_index(self):
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self):
        incidence = {v.id: [] for v in self.vertices}
        for edge in self.edges:
            incidence.setdefault(edge.tail, []).append((edge, 'tail'))
            incidence.setdefault(edge.head, []).append((edge, 'head'))
        return incidence

    def vertex(self, vertex_id):
        try:
            return self._vertex_index[vertex_id]
        except KeyError:
            raise PointOffCurveError(f'unknown vertex {vertex_id}') from None

    def edge(self, edge_id):
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise PointOffCurveError(f'unknown edge {edge_id}') from None

    def has_vertex(self, vertex_id):
        return vertex_id in self._vertex_index

    def has_edge(self, edge_id):
        return edge_id in self._edge_index

    def incident(self, vertex_id):
        """Half-edges at a vertex as (edge, end) pairs; a loop contributes two."""
        return self._incidence.get(vertex_id, [])

    def vertex_valence(self, vertex_id):
        return len(self.incident(vertex_id))

    @property
    def vertex_ids(self):
        return [v.id for v in self.vertices]

    @property
    def finite_vertices(self):
        return [v for v in self.vertices if not v.at_infinity]

    @property
    def finite_edges(self):
        return [e for e in self.edges if not e.is_infinite]

    @property
    def is_singleton(self):
        return len(self.vertices) == 1 and not self.edges

    @property
    def genus(self):
        return len(self.edges) - len(self.vertices) + 1

    def nx_graph(self, include_infinite=True):
        graph = nx.MultiGraph()
        graph.add_nodes_from(v.id for v in self.vertices)
        for edge in self.edges:
            if include_infinite or not edge.is_infinite:
                graph.add_edge(edge.tail, edge.head, key=edge.id, weight=edge.length)
        return graph

    def point(self, edge_id, offset, anchor=None):
        """Normalize an edge position; endpoints collapse to vertex references."""
        edge = self.edge(edge_id)
        offset = Fraction(offset) if not is_infinite(offset) else offset
        if anchor is not None and anchor not in (edge.tail, edge.head):
            raise PointOffCurveError(f'{anchor} is not an endpoint of {edge_id}')
        if anchor == edge.head and anchor != edge.tail:
            if edge.is_infinite:
                raise PointOffCurveError(f'offsets on {edge_id} are measured from {edge.tail}')
            offset = edge.length - offset
        if is_infinite(offset):
            if offset == INF and edge.is_infinite:
                return PointRef.at_vertex(edge.head)
            raise PointOffCurveError(f'offset {offset} is off edge {edge_id}')
        if offset < 0 or offset > edge.length:
            raise PointOffCurveError(f'offset {offset} is off edge {edge_id}')
        if offset == 0:
            return PointRef.at_vertex(edge.tail)
        if offset == edge.length:
            return PointRef.at_vertex(edge.head)
        return PointRef(edge=edge.id, offset=offset, anchor=edge.tail)

    def check_point(self, point):
        if point.is_vertex:
            self.vertex(point.vertex)
            return point
        normalized = self.point(point.edge, point.offset, point.anchor)
        if normalized.is_vertex:
            raise PointOffCurveError(f'{point!r} is an endpoint, not an interior point')
        return normalized

    def normalize(self, point):
        """Canonical form of any reference to a point of this model."""
        if point.is_vertex:
            self.vertex(point.vertex)
            return point
        return self.point(point.edge, point.offset, point.anchor)

    def is_at_infinity(self, point):
        return point.is_vertex and self.vertex(point.vertex).at_infinity

    def midpoint(self, edge_id):
        edge = self.edge(edge_id)
        if edge.is_infinite:
            return self.point(edge_id, 1)
        return self.point(edge_id, edge.length / 2)

    def sample_point(self, edge_id):
        """An interior point that tells the two orientations of the edge apart."""
        edge = self.edge(edge_id)
        if edge.is_infinite:
            return self.point(edge_id, 1)
        return self.point(edge_id, edge.length / 4)

    def describe(self):
        return {
            'vertices': len(self.vertices),
            'edges': len(self.edges),
            'genus': self.genus,
            'infinite_edges': sum(1 for e in self.edges if e.is_infinite),
        }
