"""
Curve Topology
Subgraphs, distances, valence and cut sets, decided exactly on refinements
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from troplin.exceptions import EmptySubgraphError, InvalidSubgraphError
from .embedding import refine
from .graph import PointRef
from .scalars import INF, is_infinite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Cells:
    """A subgraph seen on the refinement where all of its boundary points are vertices."""
    model: object
    embedding: object
    vertices: frozenset
    edges: frozenset

    def boundary(self):
        """Boundary points of the subgraph with their number of outgoing edges."""
        result = []
        for vertex_id in sorted(self.vertices):
            outgoing = sum(1 for edge, _ in self.model.incident(vertex_id) if edge.id not in self.edges)
            if outgoing:
                result.append((self.embedding.to_coarse(PointRef.at_vertex(vertex_id)), outgoing))
        return result

    def components(self):
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertices)
        for edge_id in self.edges:
            edge = self.model.edge(edge_id)
            graph.add_edge(edge.tail, edge.head, key=edge_id)
        return [set(c) for c in nx.connected_components(graph)]


@dataclass(frozen=True)
class Subgraph:
    """
    A closed subset of the curve: whole closed edges, single vertices and
    closed sub-intervals [start, end] of edges, offsets measured from the tail.
    """
    model: object
    edges: frozenset = field(default_factory=frozenset)
    vertices: frozenset = field(default_factory=frozenset)
    intervals: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        for edge_id in self.edges:
            self.model.edge(edge_id)
        for vertex_id in self.vertices:
            self.model.vertex(vertex_id)
        for edge_id, start, end in self.intervals:
            edge = self.model.edge(edge_id)
            if start < 0 or end < start or end > edge.length:
                raise InvalidSubgraphError(f'interval [{start}, {end}] is off edge {edge_id}')

    @classmethod
    def whole(cls, model):
        return cls(model, edges=frozenset(e.id for e in model.edges),
                   vertices=frozenset(model.vertex_ids))

    @classmethod
    def from_points(cls, model, points):
        vertices = set()
        intervals = set()
        for point in points:
            point = model.check_point(point)
            if point.is_vertex:
                vertices.add(point.vertex)
            else:
                intervals.add((point.edge, point.offset, point.offset))
        return cls(model, vertices=frozenset(vertices), intervals=frozenset(intervals))

    @classmethod
    def from_cells(cls, model, embedding, fine_vertices, fine_edges):
        """Read a union of closed cells of a refinement back onto model."""
        edges = set()
        intervals = set()
        vertices = set()
        for fine_id in fine_edges:
            placement = embedding.placements[fine_id]
            fine_edge = embedding.fine.edge(fine_id)
            coarse_edge = model.edge(placement.edge)
            end = INF if fine_edge.is_infinite else placement.start + fine_edge.length
            if placement.start == 0 and end == coarse_edge.length:
                edges.add(coarse_edge.id)
            else:
                intervals.add((coarse_edge.id, placement.start, end))
        for vertex_id in fine_vertices:
            image = embedding.to_coarse(PointRef.at_vertex(vertex_id))
            if image.is_vertex:
                vertices.add(image.vertex)
            else:
                intervals.add((image.edge, image.offset, image.offset))
        return cls(model, frozenset(edges), frozenset(vertices), frozenset(intervals))

    @property
    def is_empty(self):
        return not (self.edges or self.vertices or self.intervals)

    def contains(self, point):
        model = self.model
        point = model.check_point(point)
        if point.is_vertex:
            if point.vertex in self.vertices:
                return True
            for edge, end in model.incident(point.vertex):
                if edge.id in self.edges:
                    return True
                offset = Fraction(0) if end == 'tail' else edge.length
                if any(e == edge.id and a <= offset <= b for e, a, b in self.intervals):
                    return True
            return False
        if point.edge in self.edges:
            return True
        return any(e == point.edge and a <= point.offset <= b for e, a, b in self.intervals)

    def cut_points(self):
        points = set()
        for edge_id, start, end in self.intervals:
            length = self.model.edge(edge_id).length
            for offset in (start, end):
                if not is_infinite(offset) and 0 < offset < length:
                    points.add(self.model.point(edge_id, offset))
        return points

    def cells(self, extra_points=()):
        fine, embedding = refine(self.model, self.cut_points() | set(extra_points))
        vertices = frozenset(
            v.id for v in fine.vertices
            if self.contains(embedding.to_coarse(PointRef.at_vertex(v.id)))
        )
        edges = frozenset(
            e.id for e in fine.edges
            if self.contains(embedding.to_coarse(fine.midpoint(e.id)))
        )
        return Cells(fine, embedding, vertices, edges)

    def boundary(self):
        return self.cells().boundary()

    def complement_closure(self):
        cells = self.cells()
        outside = [e.id for e in cells.model.edges if e.id not in cells.edges]
        ends = set()
        for edge_id in outside:
            edge = cells.model.edge(edge_id)
            ends.update((edge.tail, edge.head))
        return Subgraph.from_cells(self.model, cells.embedding, ends, outside)

    def check_firing_source(self):
        """Reject empty sources and components made only of points at infinity."""
        if self.is_empty:
            raise EmptySubgraphError('the subgraph is empty')
        cells = self.cells()
        for component in cells.components():
            if all(cells.model.vertex(v).at_infinity for v in component):
                raise InvalidSubgraphError(
                    'a component of the subgraph consists only of points at infinity'
                )
        return cells


class DistanceField:
    """Exact distance from every point of the curve to a fixed subgraph."""

    def __init__(self, source):
        if source.is_empty:
            raise EmptySubgraphError('distance to an empty subgraph')
        self.source = source
        self.cells = source.cells()
        fine = self.cells.model
        graph = fine.nx_graph(include_infinite=False)
        seeds = [v for v in self.cells.vertices if not fine.vertex(v).at_infinity]
        self.vertex_distance = {v.id: INF for v in fine.vertices}
        if seeds:
            lengths = nx.multi_source_dijkstra_path_length(graph, seeds, weight='weight')
            self.vertex_distance.update(lengths)
        for vertex_id in self.cells.vertices:
            self.vertex_distance[vertex_id] = Fraction(0)
        logger.debug('distance field over %d cells', len(fine.edges))

    def _on_fine_edge(self, edge, offset):
        if edge.id in self.cells.edges:
            return Fraction(0)
        near = self.vertex_distance[edge.tail] + offset
        if edge.is_infinite:
            return near
        return min(near, self.vertex_distance[edge.head] + edge.length - offset)

    def at(self, point):
        fine_point = self.cells.embedding.to_fine(self.source.model.check_point(point))
        if fine_point.is_vertex:
            return self.vertex_distance[fine_point.vertex]
        edge = self.cells.model.edge(fine_point.edge)
        return self._on_fine_edge(edge, fine_point.offset)

    def critical_offsets(self, edge_id, reach=INF):
        """
        Offsets on a model edge between which min(reach, dist) is linear,
        the edge end points excluded.
        """
        offsets = set()
        for start, _end, fine_id, _reversed in self.cells.embedding.fine_edges_of(edge_id):
            edge = self.cells.model.edge(fine_id)
            offsets.add(start)
            if edge.id in self.cells.edges:
                continue
            near = self.vertex_distance[edge.tail]
            if edge.is_infinite:
                if not is_infinite(reach) and not is_infinite(near) and near < reach:
                    offsets.add(start + reach - near)
                continue
            far = self.vertex_distance[edge.head]
            length = edge.length
            if not is_infinite(near) and not is_infinite(far):
                peak = (far + length - near) / 2
                if 0 < peak < length:
                    offsets.add(start + peak)
            if not is_infinite(reach):
                for local in (reach - near, length - (reach - far)):
                    if not is_infinite(local) and 0 < local < length:
                        offsets.add(start + local)
            offsets.add(start + length)
        length = self.source.model.edge(edge_id).length
        return sorted(t for t in offsets if not is_infinite(t) and 0 < t < length)

    def ray_slope(self, edge_id, reach=INF):
        """Eventual slope of -min(reach, dist) along an infinite model edge."""
        fine_id = self.cells.embedding.fine_edges_of(edge_id)[-1][2]
        if fine_id in self.cells.edges or not is_infinite(reach):
            return 0
        return -1


def distance(model, x, y):
    return DistanceField(Subgraph.from_points(model, [x])).at(y)


def dist_to_subgraph(model, x, subgraph):
    if subgraph.model != model:
        raise InvalidSubgraphError('subgraph lives on another model')
    return DistanceField(subgraph).at(x)


def valence(model, point):
    point = model.check_point(point)
    if point.is_vertex:
        return model.vertex_valence(point.vertex)
    return 2


def split_at(model, points):
    """
    The curve minus finitely many points, on the refinement at those points.
    Returns (fine, embedding, removed vertex ids, components); a component is
    a set of ('v', vertex id) and ('e', edge id) nodes.
    """
    fine, embedding = refine(model, points)
    removed = {embedding.to_fine(model.check_point(p)).vertex for p in points}
    graph = nx.Graph()
    for vertex in fine.vertices:
        if vertex.id not in removed:
            graph.add_node(('v', vertex.id))
    for edge in fine.edges:
        graph.add_node(('e', edge.id))
        for end in (edge.tail, edge.head):
            if end not in removed:
                graph.add_edge(('e', edge.id), ('v', end))
    return fine, embedding, removed, [set(c) for c in nx.connected_components(graph)]


def is_cut_set(model, points):
    """True iff removing the finitely many points disconnects the curve."""
    return len(split_at(model, points)[3]) > 1
