"""
Membership
R(D), R(D)^K, firing, the generator conditions of S(D) and S(D)_K, and extremality
"""

import itertools
import logging

from django.conf import settings

from divisors_functions.functions import principal_divisor
from group_action.invariant import induce_action
from metric_graph.embedding import Chart, refine
from metric_graph.topology import is_cut_set, valence
from quotient_morphism.morphism import push_forward_divisor
from troplin.exceptions import InvalidSubgraphError, MembershipError, SearchLimitError

logger = logging.getLogger(__name__)


def chip_divisor(ctx, f):
    """E = D + div(f), on the base model."""
    f = ctx.on_base(f)
    if f.neg_infinity:
        raise MembershipError('the constant -inf function belongs to no linear system')
    return ctx.base_divisor + principal_divisor(f)


def in_R(ctx, f):
    return chip_divisor(ctx, f).is_effective


def in_RK(ctx, f):
    f = ctx.on_base(f)
    return in_R(ctx, f) and ctx.action.is_invariant_function(f)


def _require_R(ctx, f):
    divisor = chip_divisor(ctx, f)
    if not divisor.is_effective:
        raise MembershipError('the function is not in R(D)')
    return divisor


def _require_RK(ctx, f):
    divisor = _require_R(ctx, f)
    if not ctx.action.is_invariant_function(ctx.on_base(f)):
        raise MembershipError('the function is not invariant')
    return divisor


def can_fire(ctx, subgraph, divisor=None):
    """Every boundary point holds at least as many chips as edges leaving the subgraph."""
    if divisor is None:
        divisor = ctx.base_divisor if subgraph.model == ctx.base else ctx.divisor
    if not divisor.is_effective:
        raise MembershipError('firing is only defined on effective divisors')
    if subgraph.model != divisor.model:
        raise InvalidSubgraphError('the subgraph and the divisor live on different models')
    return all(divisor.coefficient(point) >= outgoing for point, outgoing in subgraph.boundary())


def in_S(ctx, f):
    """No cut set made of smooth points inside supp(D + div f)."""
    divisor = _require_R(ctx, f)
    smooth = [x for x in divisor.support if valence(ctx.base, x) == 2]
    return not is_cut_set(ctx.base, smooth)


def qualifying_points(ctx, divisor):
    """A'_max: points of supp(φ_*E) off the vertices of G' whose whole fiber carries chips of E."""
    phi = ctx.phi
    support = set(divisor.support)
    return [
        x for x in push_forward_divisor(phi, divisor).support
        if not x.is_vertex and all(p in support for p in phi.fiber(x))
    ]


def in_SK(ctx, f):
    divisor = _require_RK(ctx, f)
    return not is_cut_set(ctx.quotient.quotient, qualifying_points(ctx, divisor))


def cut_orbit_count(ctx, f):
    """N(f): cut sets inside A'_max are closed under enlargement, so their union is A'_max or nothing."""
    candidates = qualifying_points(ctx, _require_RK(ctx, f))
    return len(candidates) if is_cut_set(ctx.quotient.quotient, candidates) else 0


def qualifying_cut_set(ctx, f):
    """The smallest cut set of G' inside A'_max, ties broken lexicographically; None if there is none."""
    candidates = qualifying_points(ctx, _require_RK(ctx, f))
    quotient = ctx.quotient.quotient
    if not is_cut_set(quotient, candidates):
        return None
    for size in range(1, len(candidates) + 1):
        for subset in itertools.combinations(candidates, size):
            if is_cut_set(quotient, subset):
                return list(subset)
    return candidates


def _closure(model, edges, vertices):
    closure = set(vertices)
    for edge_id in edges:
        edge = model.edge(edge_id)
        closure.update((edge.tail, edge.head))
    return frozenset(closure)


def _fires(model, chips, edges, vertices):
    for vertex_id in vertices:
        outgoing = sum(1 for edge, _ in model.incident(vertex_id) if edge.id not in edges)
        if outgoing and chips.get(vertex_id, 0) < outgoing:
            return False
    return True


def is_extremal_invariant(ctx, f):
    """
    True unless two proper invariant subgraphs covering the curve can both
    fire on E = D + div(f). Candidates are unions of orbits of closed cells
    of the base refined at the orbit of supp(E), plus orbits of isolated
    support points.
    """
    divisor = _require_RK(ctx, f)
    base, action = ctx.base, ctx.action
    fine, embedding = refine(base, action.orbit_of_points(divisor.support))
    fine_action = induce_action(action, fine, Chart.down(embedding))
    chips = {}
    for point, coefficient in divisor:
        chips[embedding.to_fine(point).vertex] = coefficient

    edge_atoms = sorted({tuple(fine_action.edge_orbit(e.id)) for e in fine.edges})
    vertex_atoms = sorted({tuple(fine_action.vertex_orbit(v)) for v in chips})
    atoms = [(frozenset(a), frozenset()) for a in edge_atoms] + [(frozenset(), frozenset(a)) for a in vertex_atoms]
    if len(atoms) > settings.TROPLIN_EXTREMAL_ORBIT_LIMIT:
        raise SearchLimitError(f'{len(atoms)} cell orbits exceed the extremality search limit')

    all_edges = frozenset(e.id for e in fine.edges)
    all_vertices = frozenset(fine.vertex_ids)
    firable = []
    for mask in range(1, 1 << len(atoms)):
        edges, vertices = set(), set()
        for index, (edge_atom, vertex_atom) in enumerate(atoms):
            if mask >> index & 1:
                edges |= edge_atom
                vertices |= vertex_atom
        closure = _closure(fine, edges, vertices)
        if edges == all_edges and closure == all_vertices:
            continue
        if _fires(fine, chips, edges, closure):
            firable.append((frozenset(edges), closure))
    logger.debug('%d of %d invariant cell subgraphs can fire', len(firable), (1 << len(atoms)) - 1)

    for (edges_a, vertices_a), (edges_b, vertices_b) in itertools.combinations(firable, 2):
        if edges_a | edges_b == all_edges and vertices_a | vertices_b == all_vertices:
            return False
    return True
