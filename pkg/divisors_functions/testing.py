"""
Random rational functions for the seeded property suites
"""

from fractions import Fraction

from metric_graph.scalars import INF
from metric_graph.testing import random_point
from metric_graph.topology import Subgraph
from .chip_firing import ChipFiringMove
from .functions import linear_combination, trop_add, trop_scale


def random_subgraph(rng, model):
    """A few points, some whole finite edges, or one interval with ends at twelfths."""
    kind = rng.randrange(3)
    if kind == 0:
        points = {random_point(rng, model) for _ in range(rng.randint(1, 3))}
        return Subgraph.from_points(model, points)
    if kind == 1 and model.finite_edges:
        edges = rng.sample(model.finite_edges, rng.randint(1, len(model.finite_edges)))
        return Subgraph(model, edges=frozenset(e.id for e in edges))
    edge = rng.choice(model.edges)
    if edge.is_infinite:
        start = Fraction(rng.randint(0, 24), 12)
        end = start + Fraction(rng.randint(0, 12), 12)
    else:
        i = rng.randint(0, 12)
        j = rng.randint(i, 12)
        start, end = edge.length * Fraction(i, 12), edge.length * Fraction(j, 12)
    return Subgraph(model, intervals=frozenset({(edge.id, start, end)}))


def random_move(rng, model):
    reach = INF if rng.random() < 0.2 else Fraction(rng.randint(1, 12), rng.choice((2, 3, 4, 6)))
    return ChipFiringMove(random_subgraph(rng, model), reach)


def _coefficient(rng, move, model):
    # unbounded moves only enter positively on curves with rays, so no end sees opposite infinities
    if move.reach == INF and any(e.is_infinite for e in model.edges):
        return rng.randint(1, 3)
    return rng.choice((-3, -2, -1, 1, 2, 3))


def random_function(rng, model, moves=3):
    """
    An integer combination of chip-firing moves plus a constant, or the
    tropical sum of shifted moves.
    """
    picked = [random_move(rng, model) for _ in range(rng.randint(1, moves))]
    constant = Fraction(rng.randint(-12, 12), 6)
    if rng.random() < 0.5:
        return linear_combination(
            model, constant, [(move.function(), _coefficient(rng, move, model)) for move in picked]
        )
    total = None
    for move in picked:
        term = trop_scale(constant + Fraction(rng.randint(-6, 6), 4), move.function())
        total = term if total is None else trop_add(total, term)
    return total
