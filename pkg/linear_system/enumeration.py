"""
Generator Enumeration
Isolated solutions of chip-placement types, the sets S(D) and S(D)_K, and |D|^K
"""

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx
from django.conf import settings

from divisors_functions.functions import PLFunction, scaled, transport
from metric_graph.embedding import Chart, refine
from quotient_morphism.morphism import pull_back_function, push_forward_divisor, push_forward_function
from troplin.exceptions import MembershipError, NonIntegerSlopeError, NonInvariantDivisorError, SearchLimitError
from .linalg import solve_unique
from .membership import chip_divisor, in_RK, in_S, in_SK, is_extremal_invariant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneratorSet:
    """
    Representatives modulo tropical scaling on one model, each normalized to
    0 at its base vertex and listed in class-key order. provenance[i] tells
    where functions[i] came from.
    """
    model: object
    functions: tuple = ()
    provenance: tuple = ()

    @classmethod
    def collect(cls, model, candidates):
        """Deduplicate (function, tag) pairs modulo tropical scaling; the first tag of a class wins."""
        classes = {}
        for function, tag in candidates:
            key = function.class_key()
            if key not in classes:
                classes[key] = (function.normalized(), tag)
        ordered = [classes[key] for key in sorted(classes)]
        return cls(model, tuple(f for f, _ in ordered), tuple(t for _, t in ordered))

    @property
    def empty_system(self):
        return not self.functions

    def __len__(self):
        return len(self.functions)

    def __iter__(self):
        return iter(self.functions)

    def __getitem__(self, index):
        return self.functions[index]

    def index_of(self, f):
        key = f.class_key()
        for index, generator in enumerate(self.functions):
            if generator.class_key() == key:
                return index
        return None

    def restricted(self, indices):
        indices = sorted(indices)
        return GeneratorSet(
            self.model,
            tuple(self.functions[i] for i in indices),
            tuple(self.provenance[i] for i in indices),
        )


def _slope_sequences(bound, slots):
    """Strictly increasing slopes in [-bound, bound], at most slots + 1 of them, spanning at most bound."""
    sequences = []
    for length in range(1, slots + 2):
        for sequence in itertools.combinations(range(-bound, bound + 1), length):
            if sequence[-1] - sequence[0] <= bound:
                sequences.append(sequence)
    return sequences


def _edge_order(model):
    """Edges sorted so that vertices see all of their edges early."""
    first = model.vertex_ids[0]
    rank = {v: i for i, v in enumerate(nx.bfs_tree(model.nx_graph(), first))}
    return sorted(
        model.edges,
        key=lambda e: (max(rank[e.tail], rank[e.head]), min(rank[e.tail], rank[e.head]), e.id),
    )


def _solve_type(model, edges, assignment):
    """
    Vertex values and interior chip positions of one type, or None unless
    they are unique and the chips sit strictly inside their edges in order.
    On an edge with slopes s_0 < ... < s_k the chips at x_1 < ... < x_k carry
    s_i - s_(i-1) each and f(head) - f(tail) = s_k·L - Σ (s_i - s_(i-1))·x_i.
    """
    finite = [v.id for v in model.finite_vertices]
    gauge = finite[0]
    columns = {v: i for i, v in enumerate(finite[1:])}
    positions = {}
    n_columns = len(columns)
    for index, edge in enumerate(edges):
        if edge.is_infinite:
            continue
        for slot in range(1, len(assignment[index])):
            positions[index, slot] = n_columns
            n_columns += 1

    rows, rhs = [], []
    for index, edge in enumerate(edges):
        if edge.is_infinite:
            continue
        slopes = assignment[index]
        row = [0] * n_columns
        if edge.head != gauge:
            row[columns[edge.head]] += 1
        if edge.tail != gauge:
            row[columns[edge.tail]] -= 1
        for slot in range(1, len(slopes)):
            row[positions[index, slot]] += slopes[slot] - slopes[slot - 1]
        rows.append(row)
        rhs.append(slopes[-1] * edge.length)
    solution = solve_unique(rows, rhs, n_columns)
    if solution is None:
        return None

    values = {gauge: Fraction(0)}
    values.update({v: solution[c] for v, c in columns.items()})
    samples, ray_slopes = {}, {}
    for index, edge in enumerate(edges):
        slopes = assignment[index]
        if edge.is_infinite:
            ray_slopes[edge.id] = slopes[0]
            continue
        chips = [solution[positions[index, slot]] for slot in range(1, len(slopes))]
        bounds = [Fraction(0)] + chips + [edge.length]
        if any(a >= b for a, b in zip(bounds, bounds[1:])):
            return None
        value = values[edge.tail]
        samples[edge.id] = []
        for slot, x in enumerate(chips):
            value += slopes[slot] * (x - bounds[slot])
            samples[edge.id].append((x, value))
    return PLFunction.from_samples(model, values, samples, ray_slopes)


def isolated_solutions(model, divisor):
    """
    Every f in R(D) that is the only solution of its combinatorial type,
    modulo constants. A type fixes, on each edge of the model refined at
    supp(D), the slopes between consecutive interior chips; the chip
    positions and vertex values then solve a linear system. Slopes stay in
    [-deg D, deg D], and at most genus chips sit inside edges, since more
    would leave a free position.
    """
    bound = divisor.degree
    if bound < 0:
        return []
    fine, embedding = refine(model, divisor.support)
    chips = {embedding.to_fine(point).vertex: c for point, c in divisor}
    slots = model.genus
    edges = _edge_order(fine) if fine.edges else []
    finite_sequences = _slope_sequences(bound, slots)
    ray_sequences = [(s,) for s in range(-bound, bound + 1)]

    checks = defaultdict(list)
    last_seen = {}
    for index, edge in enumerate(edges):
        last_seen[edge.tail] = index
        last_seen[edge.head] = index
    for vertex_id, index in last_seen.items():
        checks[index].append(vertex_id)
    if any(chips.get(v, 0) < 0 for v in fine.vertex_ids if v not in last_seen):
        return []

    position = {edge.id: index for index, edge in enumerate(edges)}
    assignment = [None] * len(edges)
    limit = settings.TROPLIN_ENUMERATION_LIMIT
    visited = 0
    found = []

    def chips_after(vertex_id):
        total = chips.get(vertex_id, 0)
        for edge, end in fine.incident(vertex_id):
            slopes = assignment[position[edge.id]]
            total += slopes[0] if end == 'tail' else -slopes[-1]
        return total

    def search(index, used):
        nonlocal visited
        if index == len(edges):
            visited += 1
            if visited > limit:
                raise SearchLimitError(f'more than {limit} chip-placement types')
            solution = _solve_type(fine, edges, assignment)
            if solution is not None:
                found.append(solution)
            return
        edge = edges[index]
        for slopes in (ray_sequences if edge.is_infinite else finite_sequences):
            extra = len(slopes) - 1
            if used + extra > slots:
                continue
            assignment[index] = slopes
            if all(chips_after(v) >= 0 for v in checks[index]):
                search(index + 1, used + extra)
        assignment[index] = None

    search(0, 0)
    logger.debug('%d chip-placement types visited, %d isolated solutions', visited, len(found))
    up = Chart.up(embedding)
    return [transport(f, up, model) for f in found]


def enumerate_S(ctx):
    """S(D) modulo tropical scaling, read on the base model and ignoring the group."""
    candidates = isolated_solutions(ctx.base, ctx.base_divisor)
    kept = [(f, f'isolated:{index}') for index, f in enumerate(candidates) if in_S(ctx, f)]
    return GeneratorSet.collect(ctx.base, kept)


def enumerate_SK(ctx):
    """
    S(D)_K modulo tropical scaling. Every isolated solution g for φ_*D on the
    quotient is lifted to (g ∘ φ)/|K| and kept when the lift has integer
    slopes and passes the invariant membership tests.
    """
    phi = ctx.phi
    pushed = push_forward_divisor(phi, ctx.base_divisor)
    kept = []
    for index, g in enumerate(isolated_solutions(phi.target, pushed)):
        try:
            f = scaled(pull_back_function(phi, g), Fraction(1, ctx.order))
        except NonIntegerSlopeError:
            continue
        if in_RK(ctx, f) and in_SK(ctx, f):
            kept.append((f, f'quotient:{index}'))
    generators = GeneratorSet.collect(ctx.base, kept)
    logger.debug('%d invariant generators lifted from the quotient', len(generators))
    return generators


def push_forward_classes(ctx, generators):
    """The classes of φ_* s for s in generators; distinct generators give distinct classes."""
    return [push_forward_function(ctx.phi, f).class_key() for f in generators]


def minimal_generators(ctx, generators=None):
    """The extremal members of S(D)_K."""
    generators = generators if generators is not None else enumerate_SK(ctx)
    keep = [index for index, f in enumerate(generators) if is_extremal_invariant(ctx, f)]
    return generators.restricted(keep)


def invariant_linear_system(ctx, generators=None):
    """The divisors D + div(s), s in S(D)_K, that generate |D|^K; given on the curve."""
    if not ctx.divisor.is_effective:
        raise MembershipError('the linear system is only identified for effective D')
    if not ctx.action.is_invariant_divisor(ctx.base_divisor):
        raise NonInvariantDivisorError('identification with |D|^K requires invariant D')
    generators = generators if generators is not None else enumerate_SK(ctx)
    return [ctx.divisor_on_curve(chip_divisor(ctx, f)) for f in generators]
