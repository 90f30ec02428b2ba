"""
Rational Functions
Piecewise-linear functions with integer slopes, ord/div and tropical operations
"""

import bisect
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from metric_graph.embedding import refine
from metric_graph.graph import PointRef
from metric_graph.scalars import INF, NEG_INF, is_infinite
from troplin.exceptions import (
    ConflictingInfinityError,
    InvalidFunctionError,
    InvalidModelError,
    NoPrincipalDivisorError,
    NonIntegerSlopeError,
)
from .divisor import Divisor

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EdgeProfile:
    """Breakpoints strictly inside an edge, the values there and the slopes between (tail to head)."""
    breaks: tuple = ()
    values: tuple = ()
    slopes: tuple = (0,)

    def reversed(self, length):
        return EdgeProfile(
            tuple(length - t for t in reversed(self.breaks)),
            tuple(reversed(self.values)),
            tuple(-s for s in reversed(self.slopes)),
        )


def _integer_slope(rise, run):
    slope = Fraction(rise) / run
    if slope.denominator != 1:
        raise NonIntegerSlopeError(f'slope {slope} is not an integer')
    return slope.numerator


@dataclass(frozen=True)
class PLFunction:
    """
    A rational function on a model: finite values at finite vertices, one
    canonical profile per edge, values at points at infinity derived from the
    ray slopes. Only genuine slope changes are kept as breakpoints.
    """
    model: object
    vertex_values: dict = field(default_factory=dict)
    profiles: dict = field(default_factory=dict)
    neg_infinity: bool = False

    __hash__ = None

    @classmethod
    def constant(cls, model, value=0):
        value = Fraction(value)
        return cls(
            model,
            {v.id: value for v in model.vertices},
            {e.id: EdgeProfile() for e in model.edges},
        )

    @classmethod
    def minus_infinity(cls, model):
        return cls(model, {v.id: NEG_INF for v in model.vertices}, {}, neg_infinity=True)

    @classmethod
    def from_samples(cls, model, vertex_values, samples=None, ray_slopes=None):
        """
        Build the canonical function through the given values.
        samples maps an edge id to (offset, value) pairs strictly inside the
        edge; the function must be linear between consecutive samples.
        """
        samples = samples or {}
        ray_slopes = ray_slopes or {}
        values = {}
        for vertex in model.finite_vertices:
            value = vertex_values.get(vertex.id)
            if value is None or is_infinite(value):
                raise InvalidFunctionError(f'vertex {vertex.id} needs a finite value')
            values[vertex.id] = Fraction(value)
        profiles = {}
        for edge in model.edges:
            points = {Fraction(0): values[edge.tail]}
            if not edge.is_infinite:
                points[edge.length] = values[edge.head]
            for offset, value in samples.get(edge.id, ()):
                if offset <= 0 or offset >= edge.length:
                    continue
                if is_infinite(value):
                    raise InvalidFunctionError(f'infinite value inside edge {edge.id}')
                if offset in points and points[offset] != value:
                    raise InvalidFunctionError(f'two values at offset {offset} of edge {edge.id}')
                points[offset] = Fraction(value)
            offsets = sorted(points)
            slopes = [
                _integer_slope(points[b] - points[a], b - a) for a, b in zip(offsets, offsets[1:])
            ]
            interior = offsets[1:] if edge.is_infinite else offsets[1:-1]
            if edge.is_infinite:
                slopes.append(int(ray_slopes.get(edge.id, 0)))
            breaks, kept_values, kept_slopes = [], [], [slopes[0]]
            for index, offset in enumerate(interior, start=1):
                if slopes[index] != slopes[index - 1]:
                    breaks.append(offset)
                    kept_values.append(points[offset])
                    kept_slopes.append(slopes[index])
            profiles[edge.id] = EdgeProfile(tuple(breaks), tuple(kept_values), tuple(kept_slopes))
            if edge.is_infinite:
                last = kept_values[-1] if kept_values else values[edge.tail]
                ray = kept_slopes[-1]
                values[edge.head] = INF if ray > 0 else NEG_INF if ray < 0 else last
        return cls(model, values, profiles)

    def _edge_value(self, edge, offset):
        if offset == 0:
            return self.vertex_values[edge.tail]
        if is_infinite(offset) or (not edge.is_infinite and offset == edge.length):
            return self.vertex_values[edge.head]
        profile = self.profiles[edge.id]
        index = bisect.bisect_left(profile.breaks, offset)
        if index < len(profile.breaks) and profile.breaks[index] == offset:
            return profile.values[index]
        if index:
            left, left_value = profile.breaks[index - 1], profile.values[index - 1]
        else:
            left, left_value = Fraction(0), self.vertex_values[edge.tail]
        return left_value + profile.slopes[index] * (offset - left)

    def __call__(self, point):
        if self.neg_infinity:
            return NEG_INF
        point = self.model.normalize(point)
        if point.is_vertex:
            return self.vertex_values[point.vertex]
        return self._edge_value(self.model.edge(point.edge), point.offset)

    def value_on_edge(self, edge_id, offset):
        return self._edge_value(self.model.edge(edge_id), offset)

    def slope_at(self, edge_id, offset):
        """Slope (towards the head) of the piece starting at offset."""
        profile = self.profiles[edge_id]
        return profile.slopes[bisect.bisect_right(profile.breaks, offset)]

    def ray_slope(self, edge_id):
        return self.profiles[edge_id].slopes[-1]

    def breakpoints(self):
        return [
            self.model.point(edge_id, t)
            for edge_id, profile in sorted(self.profiles.items())
            for t in profile.breaks
        ]

    def refinement(self):
        """The model refined at the breakpoints, with its embedding."""
        return refine(self.model, self.breakpoints())

    @property
    def is_constant(self):
        return (
            not self.neg_infinity
            and all(p.slopes == (0,) for p in self.profiles.values())
            and len(set(self.vertex_values.values())) <= 1
        )

    def max_abs_slope(self):
        return max((abs(s) for p in self.profiles.values() for s in p.slopes), default=0)

    def base_vertex(self):
        for vertex_id in sorted(self.vertex_values):
            if not is_infinite(self.vertex_values[vertex_id]):
                return vertex_id
        return None

    def normalized(self):
        """Representative modulo tropical scaling: value 0 at the base vertex."""
        if self.neg_infinity:
            return self
        return trop_scale(-self.vertex_values[self.base_vertex()], self)

    def class_key(self):
        rep = self.normalized()
        return (
            tuple(sorted((v, str(x)) for v, x in rep.vertex_values.items())),
            tuple(sorted((e, p.breaks, p.values, p.slopes) for e, p in rep.profiles.items())),
        )

    def same_class(self, other):
        return self.model == other.model and self.class_key() == other.class_key()

    def __repr__(self):
        if self.neg_infinity:
            return 'PLFunction(-inf)'
        return f'PLFunction(values={self.vertex_values}, breaks={len(self.breakpoints())})'


def evaluate(f, point):
    return f(point)


def ord_at(f, point):
    """Sum of outgoing slopes of f at a point; at infinity, the slope out of a small neighborhood."""
    if f.neg_infinity:
        raise NoPrincipalDivisorError('the constant -inf function has no principal divisor')
    model = f.model
    point = model.normalize(point)
    if point.is_vertex:
        total = 0
        for edge, end in model.incident(point.vertex):
            profile = f.profiles[edge.id]
            total += profile.slopes[0] if end == 'tail' else -profile.slopes[-1]
        return total
    profile = f.profiles[point.edge]
    index = bisect.bisect_left(profile.breaks, point.offset)
    if index < len(profile.breaks) and profile.breaks[index] == point.offset:
        return profile.slopes[index + 1] - profile.slopes[index]
    return 0


def principal_divisor(f):
    if f.neg_infinity:
        raise NoPrincipalDivisorError('the constant -inf function has no principal divisor')
    model = f.model
    pairs = [(PointRef.at_vertex(v.id), ord_at(f, PointRef.at_vertex(v.id))) for v in model.vertices]
    for edge_id, profile in f.profiles.items():
        for index, offset in enumerate(profile.breaks):
            pairs.append((model.point(edge_id, offset), profile.slopes[index + 1] - profile.slopes[index]))
    return Divisor.from_terms(model, pairs)


def _same_model(f, g):
    if f.model != g.model:
        raise InvalidModelError('functions live on different models', code='model_mismatch')


def _edge_grid(f, g, edge):
    offsets = {Fraction(0)} | set(f.profiles[edge.id].breaks) | set(g.profiles[edge.id].breaks)
    if not edge.is_infinite:
        offsets.add(edge.length)
    return sorted(offsets)


def trop_add(f, g):
    """Pointwise maximum f ⊕ g."""
    _same_model(f, g)
    if f.neg_infinity:
        return g
    if g.neg_infinity:
        return f
    model = f.model
    vertex_values = {
        v.id: max(f.vertex_values[v.id], g.vertex_values[v.id]) for v in model.finite_vertices
    }
    samples, ray_slopes = {}, {}
    for edge in model.edges:
        grid = _edge_grid(f, g, edge)
        points = list(grid)
        for a, b in zip(grid, grid[1:]):
            fa, fb = f.value_on_edge(edge.id, a), f.value_on_edge(edge.id, b)
            ga, gb = g.value_on_edge(edge.id, a), g.value_on_edge(edge.id, b)
            if (fa - ga) * (fb - gb) < 0:
                slope_gap = (fb - fa - gb + ga) / (b - a)
                points.append(a + (ga - fa) / slope_gap)
        if edge.is_infinite:
            last = grid[-1]
            sf, sg = f.ray_slope(edge.id), g.ray_slope(edge.id)
            gap = f.value_on_edge(edge.id, last) - g.value_on_edge(edge.id, last)
            if gap and sf != sg and (gap > 0) != (sf > sg):
                points.append(last - gap / (sf - sg))
            ray_slopes[edge.id] = max(sf, sg)
        samples[edge.id] = [
            (t, max(f.value_on_edge(edge.id, t), g.value_on_edge(edge.id, t))) for t in points
        ]
    return PLFunction.from_samples(model, vertex_values, samples, ray_slopes)


def trop_scale(c, f):
    """Tropical scalar multiplication c ⊙ f = c + f."""
    if f.neg_infinity:
        return f
    c = Fraction(c)
    values = {
        v: (x if is_infinite(x) else x + c) for v, x in f.vertex_values.items()
    }
    profiles = {
        e: EdgeProfile(p.breaks, tuple(x + c for x in p.values), p.slopes)
        for e, p in f.profiles.items()
    }
    return PLFunction(f.model, values, profiles)


def trop_mul(f, g, strict=True):
    """
    Pointwise sum f ⊙ g. At a point at infinity the sign of the summed slope
    decides the value; with strict, opposite infinities whose slopes cancel
    are rejected.
    """
    _same_model(f, g)
    model = f.model
    if f.neg_infinity or g.neg_infinity:
        return PLFunction.minus_infinity(model)
    vertex_values = {
        v.id: f.vertex_values[v.id] + g.vertex_values[v.id] for v in model.finite_vertices
    }
    samples, ray_slopes = {}, {}
    for edge in model.edges:
        grid = _edge_grid(f, g, edge)
        samples[edge.id] = [
            (t, f.value_on_edge(edge.id, t) + g.value_on_edge(edge.id, t)) for t in grid
        ]
        if edge.is_infinite:
            sf, sg = f.ray_slope(edge.id), g.ray_slope(edge.id)
            if strict and sf * sg < 0 and sf + sg == 0:
                raise ConflictingInfinityError(
                    f'opposite infinities with cancelling slopes at the end of {edge.id}'
                )
            ray_slopes[edge.id] = sf + sg
    return PLFunction.from_samples(model, vertex_values, samples, ray_slopes)


def scaled(f, factor):
    """The ordinary multiple factor·f; slopes must stay integral."""
    factor = Fraction(factor)
    if factor == 0:
        return PLFunction.constant(f.model)
    values = {
        v: factor * x for v, x in f.vertex_values.items() if not is_infinite(x)
    }
    samples = {
        e: [(t, factor * x) for t, x in zip(p.breaks, p.values)] for e, p in f.profiles.items()
    }
    ray_slopes = {}
    for edge in f.model.edges:
        if edge.is_infinite:
            ray_slopes[edge.id] = _integer_slope(factor * f.ray_slope(edge.id), 1)
    return PLFunction.from_samples(f.model, values, samples, ray_slopes)


def linear_combination(model, constant, terms):
    """constant + Σ k·f over (f, k) terms; opposite infinities follow continuity."""
    total = PLFunction.constant(model, constant)
    for function, coefficient in terms:
        total = trop_mul(total, scaled(function, coefficient), strict=False)
    return total


def transport(f, chart, target):
    """The same function read on another model of the curve through chart (source to target)."""
    if f.neg_infinity:
        return PLFunction.minus_infinity(target)
    back = chart.inverse()
    vertex_values = {v.id: f(back(PointRef.at_vertex(v.id))) for v in target.finite_vertices}
    samples = {e.id: [] for e in target.edges}
    anchors = [PointRef.at_vertex(v.id) for v in f.model.finite_vertices] + f.breakpoints()
    for point in anchors:
        image = chart(point)
        if not image.is_vertex:
            samples[image.edge].append((image.offset, f(point)))
    ray_slopes = {}
    for edge in target.edges:
        if not edge.is_infinite:
            continue
        last = max((t for t, _ in samples[edge.id]), default=Fraction(0))
        here = f(back(target.point(edge.id, last)))
        beyond = f(back(target.point(edge.id, last + 1)))
        ray_slopes[edge.id] = _integer_slope(beyond - here, 1)
    return PLFunction.from_samples(target, vertex_values, samples, ray_slopes)


def precompose(f, point_map, edge_map, model):
    """
    The function x -> f(point_map(x)) for a length-preserving map given on
    vertices (point_map) and edges (edge_map: edge -> (image edge, reversed)).
    """
    vertex_values = {}
    for vertex in model.vertices:
        vertex_values[vertex.id] = f(point_map(PointRef.at_vertex(vertex.id)))
    profiles = {}
    for edge in model.edges:
        image, reversed_ = edge_map(edge.id)
        profile = f.profiles[image]
        profiles[edge.id] = profile.reversed(edge.length) if reversed_ else profile
    return PLFunction(model, vertex_values, profiles)
