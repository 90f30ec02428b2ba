"""
Linear Equivalence
Deciding whether E - D is principal by solving the weighted Laplacian exactly
"""

from fractions import Fraction

from divisors_functions.functions import PLFunction, transport
from metric_graph.embedding import Chart, check_same_curve, refine
from .linalg import solve_unique


def linear_equivalence(first, second):
    """
    The function f with first + div(f) = second, normalized to 0 at the
    first vertex, or None when the two divisors are not linearly equivalent.
    f is linear on every edge of the model refined at both supports, so its
    values solve Σ (f(u) - f(v)) / L = (second - first)(v) at each vertex v.
    """
    model = first.model
    check_same_curve(model, second.model)
    if first.degree != second.degree:
        return None
    fine, embedding = refine(model, first.support + second.support)
    target = {embedding.to_fine(point).vertex: c for point, c in second - first}

    # chips at infinity fix the ray slopes
    ray_slopes = {e.id: -target.get(e.head, 0) for e in fine.edges if e.is_infinite}
    finite = [v.id for v in fine.finite_vertices]
    gauge = finite[0]
    columns = {v: i for i, v in enumerate(finite[1:])}
    rows, rhs = [], []
    for vertex_id in finite:
        row = [Fraction(0)] * len(columns)
        right = Fraction(target.get(vertex_id, 0))
        for edge, end in fine.incident(vertex_id):
            if edge.is_infinite:
                right -= ray_slopes[edge.id]
                continue
            other = edge.head if end == 'tail' else edge.tail
            weight = 1 / edge.length
            if other != gauge:
                row[columns[other]] += weight
            if vertex_id != gauge:
                row[columns[vertex_id]] -= weight
        rows.append(row)
        rhs.append(right)
    solution = solve_unique(rows, rhs, len(columns))
    if solution is None:
        return None
    values = {gauge: Fraction(0)}
    values.update({v: solution[c] for v, c in columns.items()})
    for edge in fine.finite_edges:
        if ((values[edge.head] - values[edge.tail]) / edge.length).denominator != 1:
            return None
    f = PLFunction.from_samples(fine, values, {}, ray_slopes)
    return transport(f, Chart.up(embedding), model)
