"""
Morphisms of Tropical Curves
Edge-wise integer dilations between models, harmonicity, push-forward and pull-back
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from divisors_functions.functions import PLFunction
from metric_graph.graph import PointRef
from metric_graph.scalars import INF, is_infinite
from metric_graph.topology import Subgraph
from troplin.exceptions import InvalidModelError, NotHarmonicError

logger = logging.getLogger(__name__)

ANY_DEGREE = 'any'


@dataclass(frozen=True)
class EdgeAssignment:
    """Image of a source edge: a target edge run at dilation, or a vertex when dilation is 0."""
    target: str = None
    reversed: bool = False
    dilation: int = 1
    vertex: str = None

    @property
    def collapsed(self):
        return self.dilation == 0


def _flip(end):
    return 'head' if end == 'tail' else 'tail'


@dataclass(frozen=True)
class Morphism:
    source: object
    target: object
    vertex_map: tuple
    edge_map: tuple

    def __post_init__(self):
        self._validate()

    @classmethod
    def build(cls, source, target, vertex_map, edge_map):
        return cls(source, target, tuple(sorted(vertex_map.items())), tuple(sorted(edge_map.items())))

    @classmethod
    def identity(cls, model):
        return cls.build(
            model, model,
            {v: v for v in model.vertex_ids},
            {e.id: EdgeAssignment(e.id) for e in model.edges},
        )

    @cached_property
    def vertices(self):
        return dict(self.vertex_map)

    @cached_property
    def edges(self):
        return dict(self.edge_map)

    def _validate(self):
        source, target = self.source, self.target
        vertices, edges = dict(self.vertex_map), dict(self.edge_map)
        if set(vertices) != set(source.vertex_ids) or set(edges) != {e.id for e in source.edges}:
            raise InvalidModelError('the morphism must assign every vertex and edge', code='invalid_morphism')
        for vertex_id, image in vertices.items():
            if not target.has_vertex(image):
                raise InvalidModelError(f'vertex {vertex_id} maps to unknown vertex {image}', code='invalid_morphism')
        for edge in source.edges:
            assignment = edges[edge.id]
            if assignment.collapsed:
                if not (vertices[edge.tail] == vertices[edge.head] == assignment.vertex):
                    raise InvalidModelError(f'collapsed edge {edge.id} must map to one vertex', code='invalid_morphism')
                continue
            if assignment.dilation < 0 or not target.has_edge(assignment.target):
                raise InvalidModelError(f'edge {edge.id} has no valid image', code='invalid_morphism')
            image = target.edge(assignment.target)
            ends = (image.head, image.tail) if assignment.reversed else (image.tail, image.head)
            if (vertices[edge.tail], vertices[edge.head]) != ends:
                raise InvalidModelError(f'the ends of {edge.id} do not map to the ends of {image.id}',
                                        code='invalid_morphism')
            if image.length != assignment.dilation * edge.length:
                raise InvalidModelError(f'edge {edge.id} is not a dilation onto {image.id}', code='invalid_morphism')

    @property
    def is_finite(self):
        return all(not a.collapsed for _, a in self.edge_map)

    def image(self, point):
        point = self.source.normalize(point)
        if point.is_vertex:
            return PointRef.at_vertex(self.vertices[point.vertex])
        assignment = self.edges[point.edge]
        if assignment.collapsed:
            return PointRef.at_vertex(assignment.vertex)
        offset = assignment.dilation * point.offset
        if assignment.reversed:
            offset = self.target.edge(assignment.target).length - offset
        return self.target.point(assignment.target, offset)

    def _source_offset(self, assignment, target_offset):
        if is_infinite(target_offset):
            return INF
        if assignment.reversed:
            target_offset = self.target.edge(assignment.target).length - target_offset
        return Fraction(target_offset) / assignment.dilation

    def preimage_edges(self, target_edge_id):
        return [(e, a) for e, a in self.edge_map if not a.collapsed and a.target == target_edge_id]

    def fiber(self, point):
        """All source points mapping to a point of the target; finite morphisms only."""
        point = self.target.normalize(point)
        if point.is_vertex:
            if any(a.collapsed and a.vertex == point.vertex for _, a in self.edge_map):
                raise InvalidModelError(f'the fiber over {point!r} is infinite', code='infinite_fiber')
            return [PointRef.at_vertex(v) for v, image in self.vertex_map if image == point.vertex]
        return sorted(
            self.source.point(e, self._source_offset(a, point.offset))
            for e, a in self.preimage_edges(point.edge)
        )

    def half_edge_degrees(self, vertex_id):
        """Sum of dilations over the source half-edges at vertex_id, per target half-edge."""
        degrees = {}
        for edge, end in self.source.incident(vertex_id):
            assignment = self.edges[edge.id]
            if assignment.collapsed:
                continue
            key = (assignment.target, _flip(end) if assignment.reversed else end)
            degrees[key] = degrees.get(key, 0) + assignment.dilation
        return degrees

    def local_degree(self, point):
        """deg_x; None where the morphism is not harmonic at x."""
        if self.target.is_singleton:
            return 0
        point = self.source.normalize(point)
        if not point.is_vertex:
            return self.edges[point.edge].dilation
        degrees = self.half_edge_degrees(point.vertex)
        image = self.vertices[point.vertex]
        found = {degrees.get((edge.id, end), 0) for edge, end in self.target.incident(image)}
        if len(found) != 1:
            return None
        return found.pop()

    def is_harmonic(self):
        """(harmonic, degree): degree is 'any' between singletons and None unless finite."""
        if self.source.is_singleton and self.target.is_singleton:
            return True, ANY_DEGREE
        if self.target.is_singleton:
            return True, 0
        for vertex in self.source.vertices:
            if self.local_degree(PointRef.at_vertex(vertex.id)) is None:
                return False, None
        if not self.is_finite:
            return True, None
        totals = {
            sum(a.dilation for _, a in self.preimage_edges(edge.id)) for edge in self.target.edges
        }
        if len(totals) != 1:
            return False, None
        return True, totals.pop()


def push_forward_divisor(phi, divisor):
    return divisor.mapped(phi.image, phi.target)


def push_forward_function(phi, f):
    """φ_* f(x') = Σ deg_x(φ)·f(x) over the fiber of x'."""
    harmonic, degree = phi.is_harmonic()
    if not harmonic:
        raise NotHarmonicError('push-forward needs a harmonic morphism')
    target = phi.target
    if f.neg_infinity:
        return PLFunction.minus_infinity(target)
    if degree == 0 or degree == ANY_DEGREE:
        return PLFunction.constant(target)
    vertex_values = {}
    for vertex in target.finite_vertices:
        vertex_values[vertex.id] = sum(
            (phi.local_degree(p) * f(p) for p in phi.fiber(PointRef.at_vertex(vertex.id))),
            Fraction(0),
        )
    samples, ray_slopes = {}, {}
    for edge in target.edges:
        preimages = phi.preimage_edges(edge.id)
        offsets = set()
        for source_id, assignment in preimages:
            for t in f.profiles[source_id].breaks:
                image = phi.image(phi.source.point(source_id, t))
                offsets.add(image.offset)
        samples[edge.id] = [
            (t, sum(
                (a.dilation * f(phi.source.point(e, phi._source_offset(a, t))) for e, a in preimages),
                Fraction(0),
            ))
            for t in sorted(offsets)
        ]
        if edge.is_infinite:
            ray_slopes[edge.id] = sum(f.ray_slope(e) for e, _ in preimages)
    return PLFunction.from_samples(target, vertex_values, samples, ray_slopes)


def pull_back_function(phi, g):
    """g ∘ φ."""
    source = phi.source
    if g.neg_infinity:
        return PLFunction.minus_infinity(source)
    vertex_values = {v.id: g(phi.image(PointRef.at_vertex(v.id))) for v in source.finite_vertices}
    samples, ray_slopes = {}, {}
    for edge in source.edges:
        assignment = phi.edges[edge.id]
        if assignment.collapsed:
            if edge.is_infinite:
                ray_slopes[edge.id] = 0
            continue
        profile = g.profiles[assignment.target]
        samples[edge.id] = [
            (phi._source_offset(assignment, t), value) for t, value in zip(profile.breaks, profile.values)
        ]
        if edge.is_infinite:
            ray_slopes[edge.id] = g.ray_slope(assignment.target) * assignment.dilation
    return PLFunction.from_samples(source, vertex_values, samples, ray_slopes)


def preimage_subgraph(phi, subgraph):
    source = phi.source
    vertices = {v for v, image in phi.vertex_map if subgraph.contains(PointRef.at_vertex(image))}
    edges, intervals = set(), set()
    for edge_id, assignment in phi.edge_map:
        if assignment.collapsed:
            if subgraph.contains(PointRef.at_vertex(assignment.vertex)):
                edges.add(edge_id)
            continue
        if assignment.target in subgraph.edges:
            edges.add(edge_id)
            continue
        for target_id, start, end in subgraph.intervals:
            if target_id != assignment.target:
                continue
            a, b = phi._source_offset(assignment, start), phi._source_offset(assignment, end)
            intervals.add((edge_id, min(a, b), max(a, b)))
    return Subgraph(source, frozenset(edges), frozenset(vertices), frozenset(intervals))
