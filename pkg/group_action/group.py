"""
Finite Groups of Isometries
Closure from generators, orbits, stabilizers and the exceptional set V1
"""

import logging
from collections import deque
from dataclasses import dataclass

from django.conf import settings

from metric_graph.graph import PointRef
from troplin.exceptions import GroupNotFiniteError, InvalidGroupError
from .isometry import Isometry

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupAction:
    """A finite group of isometries of model; elements[0] is the identity."""
    model: object
    elements: tuple
    generators: tuple = ()

    @property
    def order(self):
        return len(self.elements)

    @property
    def is_trivial(self):
        return self.order == 1

    @property
    def identity(self):
        return self.elements[0]

    def orbit(self, point):
        return sorted({sigma.apply_point(self.model, point) for sigma in self.elements})

    def orbit_of_points(self, points):
        return sorted({image for point in points for image in self.orbit(point)})

    def vertex_orbit(self, vertex_id):
        return sorted({sigma.vertex(vertex_id) for sigma in self.elements})

    def edge_orbit(self, edge_id):
        return sorted({sigma.edge(edge_id)[0] for sigma in self.elements})

    def same_vertex_orbit(self, first, second):
        return any(sigma.vertex(first) == second for sigma in self.elements)

    def is_invariant_divisor(self, divisor):
        return all(sigma.apply_divisor(divisor) == divisor for sigma in self.generators)

    def is_invariant_function(self, f):
        return all(sigma.precompose(f) == f for sigma in self.generators)

    def is_invariant_subgraph(self, subgraph):
        return all(_same_cells(sigma.apply_subgraph(subgraph), subgraph) for sigma in self.generators)


def _same_cells(first, second):
    points = first.cut_points() | second.cut_points()
    a, b = first.cells(points), second.cells(points)
    return a.vertices == b.vertices and a.edges == b.edges


def _is_line(model):
    rays = [e for e in model.edges if e.is_infinite]
    return (
        len(rays) == 2 and model.genus == 0
        and all(model.vertex_valence(v.id) == 2 for v in model.finite_vertices)
    )


def close_group(model, generators=(), bound=None):
    """
    The group generated by the given isometries of model, found breadth
    first by composing with generators until nothing new appears.
    """
    bound = bound or settings.TROPLIN_GROUP_BOUND
    generators = tuple(g.validate(model) for g in generators)
    identity = Isometry.identity(model)
    seen = {identity}
    elements = [identity]
    frontier = deque([identity])
    while frontier:
        current = frontier.popleft()
        for generator in generators:
            product = generator.compose(current)
            if product in seen:
                continue
            if len(seen) >= bound:
                raise GroupNotFiniteError(f'group not finite at this bound ({bound} elements)')
            seen.add(product)
            elements.append(product)
            frontier.append(product)
    if _is_line(model):
        ends = [v.id for v in model.vertices if v.at_infinity]
        inversions = [s for s in elements if s.vertex(ends[0]) == ends[1]]
        if len(inversions) > 1:
            raise InvalidGroupError('a line admits only one inversion in a finite group')
    logger.debug('closed %d generators into a group of order %d', len(generators), len(elements))
    return GroupAction(model, tuple(elements), tuple(g for g in generators if not g.is_identity))


def stabilizer(group, point):
    point = group.model.normalize(point)
    return [sigma for sigma in group.elements if sigma.apply_point(group.model, point) == point]


def pointwise_stabilizer(group, edge_id):
    return [sigma for sigma in group.elements if sigma.edge(edge_id) == (edge_id, False)]


def setwise_stabilizer(group, edge_id):
    return [sigma for sigma in group.elements if sigma.edge(edge_id)[0] == edge_id]


def compute_V1(group):
    """
    Points whose stabilizer differs from that of points arbitrarily close:
    midpoints of edges some element reverses, and vertices where an incident
    edge is fixed pointwise by a different subgroup.
    """
    model = group.model
    if group.is_trivial:
        return []
    points = set()
    for edge in model.finite_edges:
        if any(sigma.edge(edge.id) == (edge.id, True) for sigma in group.elements):
            points.add(model.midpoint(edge.id))
    for vertex in model.vertices:
        here = set(stabilizer(group, PointRef.at_vertex(vertex.id)))
        for edge, _ in model.incident(vertex.id):
            if set(pointwise_stabilizer(group, edge.id)) != here:
                points.add(PointRef.at_vertex(vertex.id))
                break
    return sorted(points)
