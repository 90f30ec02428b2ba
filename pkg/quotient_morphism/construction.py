"""
Quotient Curves
The quotient of a curve by a finite group and the canonical harmonic morphism onto it
"""

import logging
from dataclasses import dataclass

from group_action.invariant import invariant_structure, orbit_data
from metric_graph.graph import Edge, MetricGraphModel, PointRef, Vertex
from metric_graph.scalars import INF
from .morphism import EdgeAssignment, Morphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuotientResult:
    """
    Γ' = Γ/K with φ: G1 -> G'. Quotient vertices and edges are named after the
    smallest member of their orbit on G1.
    """
    group: object
    structure: object
    orbits: object
    quotient: MetricGraphModel
    morphism: Morphism

    @property
    def invariant_model(self):
        return self.structure.model

    @property
    def degree(self):
        return self.group.order

    def phi(self, point):
        """Image of a point given on the working model of the group."""
        return self.morphism.image(self.structure.chart(point))

    def fiber(self, point):
        """The orbit over a quotient point, as points of G1."""
        point = self.quotient.normalize(point)
        action = self.structure.action
        if point.is_vertex:
            return [PointRef.at_vertex(v) for v in self.orbits.orbit_of_vertex(point.vertex)]
        edge_id = point.edge
        assignment = self.morphism.edges[edge_id]
        representative = self.invariant_model.point(edge_id, point.offset / assignment.dilation)
        return action.orbit(representative)


def build_quotient(group):
    structure = invariant_structure(group)
    model, action = structure.model, structure.action
    data = orbit_data(group)
    representative = {v: orbit[0] for orbit in data.vertex_orbits for v in orbit}
    vertices = [Vertex(orbit[0], model.vertex(orbit[0]).at_infinity) for orbit in data.vertex_orbits]
    edges, edge_map = [], {}
    for orbit in data.edge_orbits:
        leader = model.edge(orbit[0])
        stabilizer = data.edge_stabilizers[leader.id]
        length = INF if leader.is_infinite else stabilizer * leader.length
        edges.append(Edge(leader.id, representative[leader.tail], representative[leader.head], length))
        for edge_id in orbit:
            sigma = next(s for s in action.elements if s.edge(leader.id)[0] == edge_id)
            edge_map[edge_id] = EdgeAssignment(leader.id, sigma.edge(leader.id)[1], stabilizer)
    quotient = MetricGraphModel.build(vertices, edges)
    morphism = Morphism.build(model, quotient, representative, edge_map)
    logger.debug(
        'quotient by a group of order %d has %d vertices and %d edges',
        group.order, len(quotient.vertices), len(quotient.edges),
    )
    return QuotientResult(group, structure, data, quotient, morphism)
