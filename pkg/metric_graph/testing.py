"""
Curve fixtures shared by the test suites of every app
"""

from fractions import Fraction

from .graph import Edge, MetricGraphModel, PointRef, Vertex
from .scalars import INF


def curve(vertices, edges, at_infinity=()):
    return MetricGraphModel.build(
        [Vertex(v, v in at_infinity) for v in vertices],
        [Edge(e, t, h, INF if length == 'inf' else Fraction(length)) for e, t, h, length in edges],
    )


def segment(length=1):
    return curve(['a', 'b'], [('e', 'a', 'b', length)])


def circle():
    """Circle of circumference 2 parameterized by [0, 2): p = 0, q = 1."""
    return curve(['p', 'q'], [('e1', 'p', 'q', 1), ('e2', 'q', 'p', 1)])


def circle_three_arcs():
    return curve(['x', 'y', 'z'], [('a', 'x', 'y', 1), ('b', 'y', 'z', 1), ('c', 'z', 'x', 1)])


def one_vertex_circle():
    return curve(['p'], [('loop', 'p', 'p', 2)])


def theta():
    return curve(['u', 'v'], [('a', 'u', 'v', 1), ('b', 'u', 'v', 1), ('c', 'u', 'v', 1)])


def ray():
    return curve(['o', 'inf'], [('r', 'o', 'inf', 'inf')], at_infinity={'inf'})


def line():
    return curve(
        ['m', 'o', 'w'],
        [('left', 'o', 'w', 'inf'), ('right', 'o', 'm', 'inf')],
        at_infinity={'w', 'm'},
    )


def tripod():
    """A segment [a, o] of length 1 with two rays attached at o."""
    return curve(
        ['a', 'o', 'i1', 'i2'],
        [('s', 'a', 'o', 1), ('r1', 'o', 'i1', 'inf'), ('r2', 'o', 'i2', 'inf')],
        at_infinity={'i1', 'i2'},
    )


def singleton():
    return curve(['x'], [])


def circle_point(model, x):
    """The point of circle() at parameter x in [0, 2)."""
    x = Fraction(x) % 2
    if x < 1:
        return model.point('e1', x)
    return model.point('e2', x - 1)


def property_curves():
    """The curves the seeded property suites draw from."""
    return [segment(), segment(3), circle(), circle_three_arcs(), theta(), ray(), line(), tripod()]


def random_point(rng, model, vertex_share=0.2):
    """A finite point of model: a finite vertex or a twelfth of the way along some edge."""
    if rng.random() < vertex_share:
        return PointRef.at_vertex(rng.choice(model.finite_vertices).id)
    edge = rng.choice(model.edges)
    if edge.is_infinite:
        return model.point(edge.id, Fraction(rng.randint(1, 36), 12))
    return model.point(edge.id, edge.length * Fraction(rng.randint(1, 11), 12))
