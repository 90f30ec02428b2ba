"""
Invariant Models
The K-stable model G1 whose quotient is loopless, and orbit/stabilizer tables
"""

import functools
import logging
from dataclasses import dataclass

from metric_graph.embedding import Chart, canonical_loopless_chart, coarsen, refine
from metric_graph.graph import PointRef
from troplin.exceptions import NotStableError
from .group import GroupAction, compute_V1, setwise_stabilizer, stabilizer
from .isometry import Isometry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InvariantModel:
    """G1 together with the chart from the working model and the induced action."""
    model: object
    chart: object
    action: GroupAction

    def to_working(self, point):
        return self.chart.inverse()(point)


@dataclass(frozen=True)
class OrbitData:
    order: int
    vertex_orbits: tuple
    edge_orbits: tuple
    vertex_stabilizers: dict
    edge_stabilizers: dict

    def orbit_of_vertex(self, vertex_id):
        return next(o for o in self.vertex_orbits if vertex_id in o)

    def orbit_of_edge(self, edge_id):
        return next(o for o in self.edge_orbits if edge_id in o)


def induce_action(group, target, chart):
    """Read every element of group on another K-stable model of the same curve."""
    back = chart.inverse()
    working = group.model

    def lift(sigma):
        vertex_map = {}
        for vertex in target.vertices:
            image = chart(sigma.apply_point(working, back(PointRef.at_vertex(vertex.id))))
            if not image.is_vertex:
                raise NotStableError(f'vertex {vertex.id} is not mapped to a vertex')
            vertex_map[vertex.id] = image.vertex
        edge_map = {}
        for edge in target.edges:
            sample = target.sample_point(edge.id)
            image = chart(sigma.apply_point(working, back(sample)))
            if image.is_vertex:
                raise NotStableError(f'edge {edge.id} is not mapped to an edge')
            edge_map[edge.id] = (image.edge, image.offset != sample.offset)
        return Isometry.from_maps(vertex_map, edge_map).validate(target)

    return GroupAction(
        target,
        tuple(lift(sigma) for sigma in group.elements),
        tuple(lift(sigma) for sigma in group.generators),
    )


@functools.lru_cache(maxsize=64)
def invariant_structure(group):
    """
    Vertices: the K-orbit of the canonical loopless vertices and V1, then
    the orbit of the midpoint of every edge whose ends share an orbit, so
    that no edge becomes a loop in the quotient.
    """
    working = group.model
    if working.is_singleton:
        return InvariantModel(working, Chart.identity(working), group)
    canonical, to_canonical = canonical_loopless_chart(working)
    from_canonical = to_canonical.inverse()
    marked = {from_canonical(PointRef.at_vertex(v.id)) for v in canonical.vertices}
    marked.update(compute_V1(group))
    marked = group.orbit_of_points(marked)
    fine, cut = refine(working, marked)
    coarse, merge = coarsen(fine, {cut.to_fine(p).vertex for p in marked})
    chart = Chart.down(cut).then(Chart.up(merge))
    action = induce_action(group, coarse, chart)
    midpoints = action.orbit_of_points(
        coarse.midpoint(e.id) for e in coarse.finite_edges
        if action.same_vertex_orbit(e.tail, e.head)
    )
    if midpoints:
        coarse, split = refine(coarse, midpoints)
        chart = chart.then(Chart.down(split))
        action = induce_action(group, coarse, chart)
    logger.debug(
        'invariant model has %d vertices and %d edges', len(coarse.vertices), len(coarse.edges)
    )
    return InvariantModel(coarse, chart, action)


def invariant_model(group):
    return invariant_structure(group).model


def orbit_data(group, model=None):
    """Orbits and stabilizer orders on the working model or on the invariant model."""
    if model is None or model != group.model:
        structure = invariant_structure(group)
        if model is not None and model != structure.model:
            raise NotStableError('the model is not stable under the group')
        group = structure.action
    model = group.model
    vertex_orbits = sorted({tuple(group.vertex_orbit(v)) for v in model.vertex_ids})
    edge_orbits = sorted({tuple(group.edge_orbit(e.id)) for e in model.edges})
    return OrbitData(
        group.order,
        tuple(vertex_orbits),
        tuple(edge_orbits),
        {v: len(stabilizer(group, PointRef.at_vertex(v))) for v in model.vertex_ids},
        {e.id: len(setwise_stabilizer(group, e.id)) for e in model.edges},
    )
