"""
Model Embeddings
Refinement and coarsening of models, and charts relating two models of one curve
"""

import bisect
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from troplin.exceptions import InvalidModelError, PointOffCurveError
from .graph import Edge, MetricGraphModel, PointRef, Vertex
from .scalars import INF, is_infinite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Placement:
    """Where a fine edge sits inside a coarse edge."""
    edge: str
    start: Fraction
    reversed: bool = False


class Embedding:
    """
    Identifies every edge of a fine model with a sub-interval of an edge of a
    coarse model of the same curve. Fine vertices map to coarse points; every
    coarse vertex is the image of a fine vertex.
    """

    def __init__(self, fine, coarse, placements, vertex_images):
        self.fine = fine
        self.coarse = coarse
        self.placements = dict(placements)
        self.vertex_images = dict(vertex_images)
        self._vertex_preimages = {}
        for fine_id, image in self.vertex_images.items():
            if image.is_vertex:
                self._vertex_preimages[image.vertex] = fine_id
        self._segments = defaultdict(list)
        for fine_id, placement in self.placements.items():
            fine_edge = fine.edge(fine_id)
            end = INF if fine_edge.is_infinite else placement.start + fine_edge.length
            self._segments[placement.edge].append((placement.start, end, fine_id, placement.reversed))
        for segments in self._segments.values():
            segments.sort(key=lambda s: s[0])

    def to_coarse(self, point):
        if point.is_vertex:
            return self.vertex_images[point.vertex]
        placement = self.placements[point.edge]
        fine_edge = self.fine.edge(point.edge)
        if placement.reversed:
            offset = placement.start + fine_edge.length - point.offset
        else:
            offset = placement.start + point.offset
        return self.coarse.point(placement.edge, offset)

    def to_fine(self, point):
        if point.is_vertex:
            try:
                return PointRef.at_vertex(self._vertex_preimages[point.vertex])
            except KeyError:
                raise PointOffCurveError(f'{point!r} is not on the fine model') from None
        segments = self._segments.get(point.edge)
        if not segments:
            raise PointOffCurveError(f'{point!r} is not on the fine model')
        starts = [s[0] for s in segments]
        index = bisect.bisect_right(starts, point.offset) - 1
        start, end, fine_id, reversed_ = segments[index]
        if reversed_:
            return self.fine.point(fine_id, end - point.offset)
        return self.fine.point(fine_id, point.offset - start)

    def fine_edges_of(self, coarse_edge_id):
        """Fine edges inside a coarse edge as (start, end, fine_id, reversed), in order."""
        return list(self._segments.get(coarse_edge_id, []))


class Chart:
    """A composite of embeddings read forward (fine to coarse) or backward."""

    def __init__(self, source, target, steps=()):
        self.source = source
        self.target = target
        self.steps = tuple(steps)

    @classmethod
    def identity(cls, model):
        return cls(model, model)

    @classmethod
    def up(cls, embedding):
        return cls(embedding.fine, embedding.coarse, [(embedding, True)])

    @classmethod
    def down(cls, embedding):
        return cls(embedding.coarse, embedding.fine, [(embedding, False)])

    def then(self, other):
        return Chart(self.source, other.target, self.steps + other.steps)

    def inverse(self):
        return Chart(self.target, self.source, [(e, not up) for e, up in reversed(self.steps)])

    def __call__(self, point):
        for embedding, up in self.steps:
            point = embedding.to_coarse(point) if up else embedding.to_fine(point)
        return point


def _fresh_id(base, taken):
    candidate = base
    suffix = 1
    while candidate in taken:
        candidate = f'{base}~{suffix}'
        suffix += 1
    taken.add(candidate)
    return candidate


def refine(model, points):
    """
    Subdivide model at the given points.
    Returns the refined model and the embedding of it into model.
    """
    cuts = defaultdict(set)
    for point in points:
        point = model.check_point(point)
        if not point.is_vertex:
            cuts[point.edge].add(point.offset)
    if not cuts:
        identity = Embedding(
            model, model,
            {e.id: Placement(e.id, Fraction(0)) for e in model.edges},
            {v.id: PointRef.at_vertex(v.id) for v in model.vertices},
        )
        return model, identity

    taken_vertices = set(model.vertex_ids)
    original_edges = {e.id for e in model.edges}
    taken_edges = set()
    vertices = list(model.vertices)
    edges = []
    placements = {}
    vertex_images = {v.id: PointRef.at_vertex(v.id) for v in model.vertices}
    for edge in model.edges:
        offsets = sorted(cuts.get(edge.id, ()))
        if not offsets:
            taken_edges.add(edge.id)
            edges.append(edge)
            placements[edge.id] = Placement(edge.id, Fraction(0))
            continue
        chain = [edge.tail]
        for offset in offsets:
            vertex_id = _fresh_id(f'{edge.id}@{offset}', taken_vertices)
            vertices.append(Vertex(vertex_id))
            vertex_images[vertex_id] = PointRef(edge=edge.id, offset=offset, anchor=edge.tail)
            chain.append(vertex_id)
        chain.append(edge.head)
        bounds = [Fraction(0)] + offsets + [edge.length]
        for k in range(len(chain) - 1):
            edge_id = _fresh_id(f'{edge.id}:{k}', taken_edges | original_edges)
            taken_edges.add(edge_id)
            length = INF if is_infinite(bounds[k + 1]) else bounds[k + 1] - bounds[k]
            edges.append(Edge(edge_id, chain[k], chain[k + 1], length))
            placements[edge_id] = Placement(edge.id, bounds[k])
    fine = MetricGraphModel.build(vertices, edges)
    return fine, Embedding(fine, model, placements, vertex_images)


def _removable(model, keep):
    removable = set()
    for vertex in model.finite_vertices:
        if vertex.id in keep:
            continue
        incident = model.incident(vertex.id)
        if len(incident) != 2:
            continue
        (first, _), (second, _) = incident
        if first.id == second.id:
            continue
        if first.is_infinite and second.is_infinite:
            continue
        removable.add(vertex.id)
    return removable


def coarsen(model, keep=()):
    """
    Merge valence-two finite vertices not in keep.
    A circle keeps its smallest vertex and a line its smallest finite vertex.
    Returns the coarse model and the embedding of model into it.
    """
    keep = set(keep)
    removable = _removable(model, keep)
    anchors = [v.id for v in model.finite_vertices if v.id not in removable]
    if not anchors and model.edges:
        smallest = min(v.id for v in model.finite_vertices)
        removable.discard(smallest)
        anchors = [smallest]
    if not removable:
        return refine(model, ())

    visited = set()
    vertices = [v for v in model.vertices if v.id not in removable]
    edges = []
    placements = {}
    vertex_images = {}
    for vertex in vertices:
        vertex_images[vertex.id] = PointRef.at_vertex(vertex.id)
    chains = []
    for start in sorted(anchors):
        for edge, end in sorted(model.incident(start), key=lambda h: (h[0].id, h[1])):
            if edge.id in visited:
                continue
            chain = []
            current = start
            while True:
                visited.add(edge.id)
                reversed_ = end == 'head'
                chain.append((edge, reversed_))
                current = edge.tail if reversed_ else edge.head
                if current not in removable:
                    break
                edge, end = next(
                    (e, side) for e, side in model.incident(current) if e.id not in visited
                )
            chains.append((start, current, chain))

    for tail, head, chain in chains:
        coarse_id = min(edge.id for edge, _ in chain)
        leader_reversed = next(r for edge, r in chain if edge.id == coarse_id)
        if leader_reversed and not any(edge.is_infinite for edge, _ in chain):
            chain = [(edge, not r) for edge, r in reversed(chain)]
            tail, head = head, tail
        total = Fraction(0)
        for edge, reversed_ in chain:
            placements[edge.id] = (coarse_id, total, reversed_)
            total = INF if edge.is_infinite else total + edge.length
        edges.append(Edge(coarse_id, tail, head, total))
    coarse = MetricGraphModel.build(vertices, edges)
    final = {}
    for fine_id, (coarse_id, start, reversed_) in placements.items():
        final[fine_id] = Placement(coarse_id, start, reversed_)
        fine_edge = model.edge(fine_id)
        if fine_edge.is_infinite:
            ends = ((fine_edge.tail, start),)
        elif reversed_:
            ends = ((fine_edge.tail, start + fine_edge.length), (fine_edge.head, start))
        else:
            ends = ((fine_edge.tail, start), (fine_edge.head, start + fine_edge.length))
        for vertex_id, offset in ends:
            if vertex_id in removable:
                vertex_images[vertex_id] = coarse.point(coarse_id, offset)
    logger.debug('coarsened %d vertices into %d', len(model.vertices), len(coarse.vertices))
    return coarse, Embedding(model, coarse, final, vertex_images)


def canonical_loopless_chart(model):
    """The canonical loopless model together with the chart from model to it."""
    if model.is_singleton:
        return model, Chart.identity(model)
    coarse, merge = coarsen(model)
    chart = Chart.up(merge)
    loops = [e.id for e in coarse.edges if e.is_loop]
    if not loops:
        return coarse, chart
    loopless, split = refine(coarse, [coarse.midpoint(e) for e in loops])
    return loopless, chart.then(Chart.down(split))


def canonical_loopless_model(model):
    return canonical_loopless_chart(model)[0]


def check_same_curve(first, second):
    if first != second:
        raise InvalidModelError('objects live on different models', code='model_mismatch')


def embed_refinement(fine, coarse, parents):
    """
    Embed a user-supplied subdivision of coarse. parents maps every fine edge
    to the coarse edge it subdivides; coarse vertices keep their ids.
    """
    by_parent = defaultdict(list)
    for edge in fine.edges:
        parent = parents.get(edge.id, edge.id)
        if not coarse.has_edge(parent):
            raise InvalidModelError(f'edge {edge.id} has no parent edge {parent}', code='refinement_mismatch')
        by_parent[parent].append(edge)
    for vertex in coarse.vertices:
        if not fine.has_vertex(vertex.id):
            raise InvalidModelError(f'refinement lost vertex {vertex.id}', code='refinement_mismatch')
    placements = {}
    vertex_images = {v.id: PointRef.at_vertex(v.id) for v in coarse.vertices}
    for coarse_edge in coarse.edges:
        pending = {e.id: e for e in by_parent.get(coarse_edge.id, ())}
        current, total = coarse_edge.tail, Fraction(0)
        while pending:
            step = next(
                (e for e in sorted(pending.values(), key=lambda e: e.id) if current in (e.tail, e.head)),
                None,
            )
            if step is None:
                break
            del pending[step.id]
            reversed_ = step.tail != current
            placements[step.id] = Placement(coarse_edge.id, total, reversed_)
            current = step.tail if reversed_ else step.head
            total = INF if step.is_infinite else total + step.length
            if pending and coarse.has_vertex(current):
                break
            if pending:
                vertex_images[current] = coarse.point(coarse_edge.id, total)
        if pending or current != coarse_edge.head or total != coarse_edge.length:
            raise InvalidModelError(
                f'edges with parent {coarse_edge.id} do not subdivide it', code='refinement_mismatch'
            )
    for vertex in fine.vertices:
        if vertex.id not in vertex_images:
            raise InvalidModelError(f'vertex {vertex.id} is not on any parent edge', code='refinement_mismatch')
    return Embedding(fine, coarse, placements, vertex_images)
