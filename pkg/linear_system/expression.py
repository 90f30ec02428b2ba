"""
Tropical Combinations
Writing an invariant member of R(D)^K as a max of translated generators
"""

import functools
import logging
from dataclasses import dataclass

from django.conf import settings

from divisors_functions.chip_firing import chip_firing
from divisors_functions.functions import trop_add, trop_mul, trop_scale
from metric_graph.graph import PointRef
from metric_graph.scalars import INF
from metric_graph.topology import DistanceField, Subgraph, split_at
from quotient_morphism.morphism import preimage_subgraph
from troplin.exceptions import MembershipError, MissingGeneratorError, SearchLimitError
from .enumeration import enumerate_SK
from .membership import in_RK, in_SK, qualifying_cut_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TropicalCombination:
    """⊕_j (c_j ⊙ s_j) over (generator index j, coefficient c_j) terms, sorted by index."""
    terms: tuple

    @classmethod
    def single(cls, index, coefficient):
        return cls(((index, coefficient),))

    def merged(self, other):
        coefficients = dict(self.terms)
        for index, coefficient in other.terms:
            coefficients[index] = max(coefficient, coefficients.get(index, coefficient))
        return TropicalCombination(tuple(sorted(coefficients.items())))

    def evaluate(self, generators):
        return functools.reduce(trop_add, (trop_scale(c, generators[j]) for j, c in self.terms))


def firing_pair(ctx, cut):
    """
    Γ1, the fiber of the closure of one component of G' minus the cut, and
    Γ2, the closure of its complement. Both are invariant and bounded by
    fibers of cut points.
    """
    quotient = ctx.quotient.quotient
    fine, embedding, removed, components = split_at(quotient, cut)
    component = min(components, key=sorted)
    edges = {node for kind, node in component if kind == 'e'}
    vertices = {node for kind, node in component if kind == 'v'}
    for edge_id in edges:
        edge = fine.edge(edge_id)
        vertices.update(end for end in (edge.tail, edge.head) if end in removed)
    piece = Subgraph.from_cells(quotient, embedding, vertices, edges)
    first = preimage_subgraph(ctx.phi, piece)
    return first, first.complement_closure()


def firing_reach(model, subgraph):
    """
    Distance from subgraph to the nearest vertex of model outside it. Firing
    that far lands at least one orbit of chips on a vertex; +inf when no
    finite vertex lies outside.
    """
    field = DistanceField(subgraph)
    reach = INF
    for vertex in model.vertices:
        point = PointRef.at_vertex(vertex.id)
        if not subgraph.contains(point):
            reach = min(reach, field.at(point))
    return reach


def express(ctx, f, generators=None):
    """A TropicalCombination of the generators that evaluates to f on the base model."""
    generators = generators if generators is not None else enumerate_SK(ctx)
    f = ctx.on_base(f)
    if not in_RK(ctx, f):
        raise MembershipError('only invariant members of R(D) can be expressed')
    return _express(ctx, f, generators, 0)


def _express(ctx, f, generators, depth):
    if depth > settings.TROPLIN_EXPRESS_MAX_DEPTH:
        raise SearchLimitError(f'expression recursion deeper than {settings.TROPLIN_EXPRESS_MAX_DEPTH}')
    if in_SK(ctx, f):
        index = generators.index_of(f)
        if index is None:
            raise MissingGeneratorError('a member of S(D)_K is missing from the generator set')
        vertex_id = generators[index].base_vertex()
        return TropicalCombination.single(index, f.vertex_values[vertex_id] - generators[index].vertex_values[vertex_id])
    cut = qualifying_cut_set(ctx, f)
    combination = None
    for part in firing_pair(ctx, cut):
        reach = firing_reach(ctx.base, part)
        logger.debug('depth %d: firing along %d cut points by %s', depth, len(cut), reach)
        term = _express(ctx, trop_mul(f, chip_firing(part, reach), strict=False), generators, depth + 1)
        combination = term if combination is None else combination.merged(term)
    return combination
