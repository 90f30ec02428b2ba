"""
Chip-Firing Moves
The functions -min(reach, dist(x, source)) and the decomposition of any
rational function into an integer combination of them plus a constant
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from metric_graph.graph import PointRef
from metric_graph.scalars import INF, is_infinite
from metric_graph.topology import DistanceField, Subgraph
from troplin.exceptions import InvalidSubgraphError, NoPrincipalDivisorError
from .functions import PLFunction, linear_combination

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChipFiringMove:
    source: Subgraph
    reach: object = INF

    def __post_init__(self):
        if self.reach <= 0:
            raise InvalidSubgraphError('the reach of a chip-firing move must be positive')
        self.source.check_firing_source()

    def function(self):
        return chip_firing(self.source, self.reach)


def chip_firing(source, reach=INF):
    """CF(source, reach)(x) = -min(reach, dist(x, source))."""
    source.check_firing_source()
    if reach <= 0:
        raise InvalidSubgraphError('the reach of a chip-firing move must be positive')
    model = source.model
    field = DistanceField(source)

    def value(point):
        return -min(reach, field.at(point))

    vertex_values = {v.id: value(PointRef.at_vertex(v.id)) for v in model.finite_vertices}
    samples = {
        e.id: [(t, value(model.point(e.id, t))) for t in field.critical_offsets(e.id, reach)]
        for e in model.edges
    }
    ray_slopes = {e.id: field.ray_slope(e.id, reach) for e in model.edges if e.is_infinite}
    return PLFunction.from_samples(model, vertex_values, samples, ray_slopes)


@dataclass(frozen=True)
class ChipFiringDecomposition:
    model: object
    constant: Fraction
    terms: tuple

    def reconstruct(self):
        return linear_combination(
            self.model, self.constant, [(move.function(), k) for move, k in self.terms]
        )


@dataclass(frozen=True)
class _Piece:
    edge: str
    start: Fraction
    end: object
    start_value: object
    end_value: object
    slope: int

    @property
    def bounded(self):
        return not is_infinite(self.end)


def _level_pieces(f, levels):
    """Linear pieces of f, cut wherever f crosses one of the levels."""
    pieces = []
    for edge in f.model.edges:
        profile = f.profiles[edge.id]
        offsets = [Fraction(0), *profile.breaks]
        if not edge.is_infinite:
            offsets.append(edge.length)
        cuts = set(offsets)
        for index, (a, b) in enumerate(zip(offsets, offsets[1:])):
            va, slope = f.value_on_edge(edge.id, a), profile.slopes[index]
            vb = f.value_on_edge(edge.id, b)
            for level in levels:
                if min(va, vb) < level < max(va, vb):
                    cuts.add(a + (level - va) / slope)
        if edge.is_infinite:
            last = offsets[-1]
            va, slope = f.value_on_edge(edge.id, last), profile.slopes[-1]
            for level in levels:
                if (slope < 0 and level < va) or (slope > 0 and level > va):
                    cuts.add(last + (level - va) / slope)
        cuts = sorted(cuts)
        for a, b in zip(cuts, cuts[1:]):
            pieces.append(_Piece(
                edge.id, a, b, f.value_on_edge(edge.id, a), f.value_on_edge(edge.id, b),
                f.slope_at(edge.id, a),
            ))
        if edge.is_infinite:
            a = cuts[-1]
            pieces.append(_Piece(
                edge.id, a, INF, f.value_on_edge(edge.id, a), f.vertex_values[edge.head],
                f.ray_slope(edge.id),
            ))
    return pieces


def _superlevel(f, pieces, level):
    """The closed set {f >= level} assembled from level-cut pieces."""
    model = f.model
    vertices = {v for v, x in f.vertex_values.items() if x >= level}
    intervals = set()
    for piece in pieces:
        if min(piece.start_value, piece.end_value) >= level:
            intervals.add((piece.edge, piece.start, piece.end))
            continue
        for offset, value in ((piece.start, piece.start_value), (piece.end, piece.end_value)):
            if value >= level and not is_infinite(offset):
                point = model.point(piece.edge, offset)
                if point.is_vertex:
                    vertices.add(point.vertex)
                else:
                    intervals.add((piece.edge, offset, offset))
    return vertices, intervals


def decompose_chip_firing(f):
    """
    Write f as c + Σ k·CF(A, l): the finite value range is swept layer by
    layer between consecutive critical values, and each unbounded ray
    contributes a move with infinite reach.
    """
    if f.neg_infinity:
        raise NoPrincipalDivisorError('the constant -inf function has no principal divisor')
    model = f.model
    levels = {x for x in f.vertex_values.values() if not is_infinite(x)}
    for profile in f.profiles.values():
        levels.update(profile.values)
    levels = sorted(levels, reverse=True)
    top = levels[0]
    pieces = _level_pieces(f, levels)
    terms = []
    for upper, lower in zip(levels, levels[1:]):
        band = [
            p for p in pieces
            if p.bounded and {p.start_value, p.end_value} == {upper, lower}
        ]
        if not band:
            continue
        steepness = [abs(p.slope) for p in band]
        count = math.lcm(*steepness)
        step = (upper - lower) / count
        vertices, intervals = _superlevel(f, pieces, upper)
        grouped = Counter(
            tuple((j - 1) // s for s in steepness) for j in range(1, count + 1)
        )
        for key, multiplicity in sorted(grouped.items()):
            grown = set(intervals)
            for piece, k in zip(band, key):
                length = k * step
                if piece.start_value == upper:
                    grown.add((piece.edge, piece.start, piece.start + length))
                else:
                    grown.add((piece.edge, piece.end - length, piece.end))
            source = Subgraph(model, frozenset(), frozenset(vertices), frozenset(grown))
            terms.append((ChipFiringMove(source, step), multiplicity))
    for piece in pieces:
        if piece.bounded or piece.slope == 0:
            continue
        edge = model.edge(piece.edge)
        source = Subgraph(
            model,
            frozenset(e.id for e in model.edges if e.id != edge.id),
            frozenset(v.id for v in model.vertices if v.id != edge.head),
            frozenset({(edge.id, Fraction(0), piece.start)}),
        )
        terms.append((ChipFiringMove(source, INF), -piece.slope))
    logger.debug('decomposed function into %d chip-firing moves', len(terms))
    return ChipFiringDecomposition(model, top, tuple(terms))
