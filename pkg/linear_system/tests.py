import itertools
import random
from fractions import Fraction

import networkx as nx
from django.test import SimpleTestCase, override_settings

from divisors_functions.chip_firing import chip_firing
from divisors_functions.divisor import Divisor
from divisors_functions.functions import PLFunction, principal_divisor, scaled, trop_add, trop_mul, trop_scale
from group_action.testing import reflection_group, rotation_group, segment_flip_group
from metric_graph.graph import PointRef
from metric_graph.testing import circle, circle_point, ray, segment, theta
from metric_graph.topology import Subgraph, is_cut_set, valence
from quotient_morphism.morphism import pull_back_function
from troplin.exceptions import (
    InvalidModelError, MembershipError, MissingGeneratorError, NonInvariantDivisorError, SearchLimitError,
)
from .context import make_context, translate_context
from .enumeration import (
    enumerate_S, enumerate_SK, invariant_linear_system, isolated_solutions, minimal_generators,
    push_forward_classes,
)
from .equivalence import linear_equivalence
from .expression import TropicalCombination, express
from .linalg import solve_unique
from .membership import (
    can_fire, chip_divisor, cut_orbit_count, in_R, in_RK, in_S, in_SK, is_extremal_invariant,
    qualifying_cut_set,
)
from .serializers import CombinationSerializer, GeneratorSetSerializer


def at(vertex_id):
    return PointRef.at_vertex(vertex_id)


def line_on_segment(slope, length=1):
    return PLFunction.from_samples(segment(length), {'a': 0, 'b': slope * length})


def cut_at_half():
    """-min(x, 1/2) on the unit segment."""
    return chip_firing(Subgraph.from_points(segment(), [at('a')]), Fraction(1, 2))


def example_context():
    """The circle of circumference 2 with the reflection x -> -x and D = [1/2] + [3/4]."""
    model = circle()
    divisor = Divisor.from_terms(model, [(circle_point(model, '1/2'), 1), (circle_point(model, '3/4'), 1)])
    return make_context(divisor, reflection_group())


def flip_context():
    """segment(2) with x -> 2 - x and D = [a] + [b]."""
    group = segment_flip_group()
    return make_context(Divisor.from_terms(group.model, [(at('a'), 1), (at('b'), 1)]), group)


def double_flip_context():
    """segment(2) with x -> 2 - x and D = 2[a] + 2[b]."""
    group = segment_flip_group()
    return make_context(Divisor.from_terms(group.model, [(at('a'), 2), (at('b'), 2)]), group)


def trivial_context(model, terms):
    return make_context(Divisor.from_terms(model, [(at(v), k) for v, k in terms]))


def random_member(rng, generators):
    """A tropical combination of a random nonempty subset of generators."""
    picked = rng.sample(range(len(generators)), rng.randint(1, len(generators)))
    total = None
    for index in picked:
        term = trop_scale(Fraction(rng.randint(-12, 12), 6), generators[index])
        total = term if total is None else trop_add(total, term)
    return total


def mesh(model, parts=6):
    """The curve cut into `parts` equal pieces per edge, as a graph on points."""
    graph = nx.Graph()
    graph.add_nodes_from(at(v.id) for v in model.vertices)
    for edge in model.edges:
        step = edge.length / parts
        chain = (
            [at(edge.tail)]
            + [model.point(edge.id, step * k) for k in range(1, parts)]
            + [at(edge.head)]
        )
        for u, w in zip(chain, chain[1:]):
            graph.add_edge(u, w, step=step)
    return graph


def mesh_generators(model, divisor, parts=6):
    """
    Every function of R(D) that is linear on the mesh pieces and whose smooth
    chips cut nothing, as values along the BFS order of the mesh, normalized
    to 0 at its first point. Returns (order, sections).
    """
    graph = mesh(model, parts)
    root = at(model.vertices[0].id)
    order = [root] + [child for _, child in nx.bfs_edges(graph, root)]
    parent = {child: up for up, child in nx.bfs_edges(graph, root)}
    bound = max(divisor.degree, 0)
    values = {root: Fraction(0)}

    def slope(u, w):
        return (values[w] - values[u]) / graph.edges[u, w]['step']

    def chips(u):
        return divisor.coefficient(u) + sum(slope(u, w) for w in graph[u])

    def admissible(node):
        if any(abs(slope(node, w)) > bound for w in graph[node] if w in values):
            return False
        for u in [node, *graph[node]]:
            if u in values and all(w in values for w in graph[u]) and chips(u) < 0:
                return False
        return True

    sections = []

    def extend(index):
        if index == len(order):
            sections.append(dict(values))
            return
        node = order[index]
        up = parent[node]
        for s in range(-bound, bound + 1):
            values[node] = values[up] + s * graph.edges[up, node]['step']
            if admissible(node):
                extend(index + 1)
            del values[node]

    extend(1)

    def cuts(section):
        values.clear()
        values.update(section)
        removed = {u for u in order if chips(u) > 0 and valence(model, u) == 2}
        pieces = nx.Graph()
        pieces.add_nodes_from(u for u in order if u not in removed)
        for u, w in graph.edges:
            pieces.add_node((u, w))
            pieces.add_edges_from(((u, w), end) for end in (u, w) if end not in removed)
        return not nx.is_connected(pieces)

    kept = {tuple(section[u] for u in order) for section in sections if not cuts(section)}
    return order, kept


class LinalgTests(SimpleTestCase):

    def test_unique_solution(self):
        self.assertEqual(solve_unique([[2, 1], [1, -1]], [3, 0], 2), [1, 1])

    def test_singular_and_inconsistent(self):
        self.assertIsNone(solve_unique([[1, 1], [2, 2]], [1, 2], 2))
        self.assertIsNone(solve_unique([[1], [1]], [1, 2], 1))
        self.assertEqual(solve_unique([], [], 0), [])

    def test_exact(self):
        self.assertEqual(solve_unique([[3]], [1], 1), [Fraction(1, 3)])


class ContextTests(SimpleTestCase):

    def test_trivial_group(self):
        ctx = make_context(Divisor.from_terms(segment(), [(at('a'), 1)]))
        self.assertEqual(ctx.order, 1)
        self.assertEqual(ctx.base, segment())
        self.assertEqual(ctx.degree, 1)

    def test_model_mismatch(self):
        with self.assertRaises(InvalidModelError) as raised:
            make_context(Divisor.zero(segment()), reflection_group())
        self.assertEqual(raised.exception.code, 'model_mismatch')

    def test_translation(self):
        ctx = make_context(Divisor.from_terms(segment(), [(at('a'), 1)]))
        h = line_on_segment(-1)
        moved = translate_context(ctx, h)
        self.assertEqual(moved.divisor, Divisor.from_terms(segment(), [(at('b'), 1)]))
        for f in (PLFunction.constant(segment()), line_on_segment(1), line_on_segment(2), cut_at_half()):
            self.assertEqual(in_RK(moved, f), in_RK(ctx, trop_mul(f, h)))

    def test_translation_needs_invariance(self):
        ctx = example_context()
        model = ctx.curve
        h = chip_firing(Subgraph.from_points(model, [circle_point(model, '1/2')]), Fraction(1, 8))
        with self.assertRaises(MembershipError):
            translate_context(ctx, h)


class MembershipTests(SimpleTestCase):

    def setUp(self):
        self.ctx = make_context(Divisor.from_terms(segment(), [(at('a'), 1)]))

    def test_in_R(self):
        self.assertTrue(in_R(self.ctx, PLFunction.constant(segment())))
        self.assertTrue(in_R(self.ctx, line_on_segment(-1)))
        self.assertFalse(in_R(self.ctx, line_on_segment(-2)))
        with self.assertRaises(MembershipError):
            in_R(self.ctx, PLFunction.minus_infinity(segment()))

    def test_trivial_group_in_RK_is_in_R(self):
        for slope in (-2, -1, 0, 1):
            f = line_on_segment(slope)
            self.assertEqual(in_RK(self.ctx, f), in_R(self.ctx, f))

    def test_can_fire(self):
        model = segment()
        source = Subgraph.from_points(model, [at('a')])
        self.assertTrue(can_fire(self.ctx, source, Divisor.from_terms(model, [(at('a'), 1)])))
        self.assertFalse(can_fire(self.ctx, source, Divisor.zero(model)))
        self.assertTrue(can_fire(self.ctx, source))
        with self.assertRaises(MembershipError):
            can_fire(self.ctx, source, Divisor.from_terms(model, [(at('a'), -1)]))

    def test_can_fire_counts_each_boundary_point(self):
        model = theta()
        star = Subgraph(model, intervals=frozenset(
            (e, Fraction(0), Fraction(1, 2)) for e in ('a', 'b', 'c')
        ))
        halves = [model.point(e, Fraction(1, 2)) for e in ('a', 'b', 'c')]
        ctx = make_context(Divisor.zero(model))
        self.assertTrue(can_fire(ctx, star, Divisor.from_terms(model, [(p, 1) for p in halves])))
        self.assertFalse(can_fire(ctx, star, Divisor.from_terms(model, [(halves[0], 2), (halves[1], 1)])))

    def test_in_S(self):
        self.assertTrue(in_S(self.ctx, PLFunction.constant(segment())))
        self.assertFalse(in_S(self.ctx, cut_at_half()))
        with self.assertRaises(MembershipError):
            in_S(self.ctx, line_on_segment(-2))

    def test_in_S_counts_valence_two_vertices_as_smooth(self):
        model = circle()
        ctx = make_context(Divisor.from_terms(model, [(at('p'), 1), (at('q'), 1)]))
        self.assertFalse(in_S(ctx, PLFunction.constant(model)))

    def test_in_SK_with_trivial_group(self):
        self.assertTrue(in_SK(self.ctx, PLFunction.constant(segment())))
        self.assertFalse(in_SK(self.ctx, cut_at_half()))

    def test_cut_orbit_count_and_cut_set(self):
        self.assertEqual(cut_orbit_count(self.ctx, PLFunction.constant(segment())), 0)
        self.assertEqual(cut_orbit_count(self.ctx, cut_at_half()), 1)
        self.assertIsNone(qualifying_cut_set(self.ctx, PLFunction.constant(segment())))
        self.assertEqual(qualifying_cut_set(self.ctx, cut_at_half()), [segment().point('e', Fraction(1, 2))])

    def test_extremality(self):
        self.assertTrue(is_extremal_invariant(self.ctx, PLFunction.constant(segment())))
        self.assertTrue(is_extremal_invariant(self.ctx, line_on_segment(-1)))
        self.assertFalse(is_extremal_invariant(self.ctx, cut_at_half()))

    @override_settings(TROPLIN_EXTREMAL_ORBIT_LIMIT=1)
    def test_extremality_limit(self):
        with self.assertRaises(SearchLimitError):
            is_extremal_invariant(self.ctx, PLFunction.constant(segment()))


class SegmentGeneratorTests(SimpleTestCase):

    def setUp(self):
        self.ctx = make_context(Divisor.from_terms(segment(), [(at('a'), 1)]))

    def assertClasses(self, generators, expected):
        self.assertEqual(len(generators), len(expected))
        for f in expected:
            self.assertIsNotNone(generators.index_of(self.ctx.on_base(f)), f)

    def test_enumerate_S(self):
        expected = [PLFunction.constant(segment()), line_on_segment(-1)]
        generators = enumerate_S(self.ctx)
        self.assertClasses(generators, expected)
        for f in generators:
            self.assertTrue(in_S(self.ctx, f))
            self.assertLessEqual(f.max_abs_slope(), self.ctx.degree)

    def test_enumerate_SK_matches_with_trivial_group(self):
        self.assertEqual(
            [f.class_key() for f in enumerate_SK(self.ctx)],
            [f.class_key() for f in enumerate_S(self.ctx)],
        )

    def test_both_generators_are_extremal(self):
        self.assertEqual(len(minimal_generators(self.ctx)), 2)

    def test_invariant_linear_system(self):
        divisors = invariant_linear_system(self.ctx)
        model = segment()
        self.assertEqual(
            sorted(divisors, key=repr),
            sorted([Divisor.from_terms(model, [(at('a'), 1)]), Divisor.from_terms(model, [(at('b'), 1)])], key=repr),
        )

    def test_zero_divisor(self):
        for model in (segment(), circle(), theta(), ray()):
            ctx = make_context(Divisor.zero(model))
            generators = minimal_generators(ctx)
            self.assertEqual(len(generators), 1)
            self.assertTrue(generators[0].is_constant)

    def test_negative_degree_is_an_empty_system(self):
        ctx = make_context(Divisor.from_terms(segment(), [(at('a'), -1)]))
        self.assertTrue(enumerate_S(ctx).empty_system)
        self.assertTrue(enumerate_SK(ctx).empty_system)

    def test_degree_zero_without_sections(self):
        ctx = make_context(Divisor.from_terms(circle(), [(at('p'), 1), (at('q'), -1)]))
        self.assertTrue(enumerate_S(ctx).empty_system)

    def test_rays(self):
        model = ray()
        ctx = make_context(Divisor.from_terms(model, [(at('o'), 1)]))
        descending = PLFunction.from_samples(model, {'o': 0}, ray_slopes={'r': -1})
        generators = enumerate_S(ctx)
        self.assertEqual(len(generators), 2)
        self.assertIsNotNone(generators.index_of(ctx.on_base(descending)))

    @override_settings(TROPLIN_ENUMERATION_LIMIT=1)
    def test_enumeration_limit(self):
        with self.assertRaises(SearchLimitError):
            enumerate_S(self.ctx)


class CircleGeneratorTests(SimpleTestCase):

    def test_degree_one_is_rigid(self):
        ctx = make_context(Divisor.from_terms(circle(), [(at('p'), 1)]))
        generators = enumerate_S(ctx)
        self.assertEqual(len(generators), 1)
        self.assertTrue(generators[0].is_constant)

    def test_isolated_solutions_include_non_generators(self):
        ctx = example_context()
        solutions = isolated_solutions(ctx.base, ctx.base_divisor)
        self.assertGreater(len(solutions), len(enumerate_S(ctx)))
        self.assertTrue(all(in_R(ctx, f) for f in solutions))

    def test_rotation_invariant_system(self):
        group = rotation_group()
        model = group.model
        ctx = make_context(Divisor.from_terms(model, [(at('p'), 1), (at('q'), 1)]), group)
        generators = enumerate_SK(ctx)
        self.assertEqual(len(generators), 1)
        rotation = group.generators[0]
        for divisor in invariant_linear_system(ctx, generators):
            self.assertTrue(divisor.is_effective)
            self.assertEqual(rotation.apply_divisor(divisor), divisor)

    def test_vertices_widen_the_invariant_generators(self):
        ctx = trivial_context(circle(), [('p', 3)])
        plain, invariant = enumerate_S(ctx), enumerate_SK(ctx)
        self.assertEqual(len(plain), 3)
        self.assertEqual(len(invariant), 6)
        keys = {f.class_key() for f in invariant}
        self.assertTrue(all(f.class_key() in keys for f in plain))
        extra = [f for f in invariant if not in_S(ctx, f)]
        self.assertEqual(len(extra), 3)
        self.assertTrue(all(in_SK(ctx, f) for f in extra))


class ReflectionExampleTests(SimpleTestCase):

    def setUp(self):
        self.ctx = example_context()
        self.zero = PLFunction.constant(self.ctx.curve)

    def test_zero_is_an_invariant_member(self):
        self.assertTrue(in_RK(self.ctx, self.zero))
        self.assertTrue(in_SK(self.ctx, self.zero))

    def test_non_invariant_member(self):
        model = self.ctx.curve
        f = chip_firing(Subgraph(model, intervals=frozenset({('e1', Fraction(1, 2), Fraction(3, 4))})), Fraction(1, 8))
        self.assertTrue(in_R(self.ctx, f))
        self.assertFalse(in_RK(self.ctx, f))

    def test_no_generator_of_R_is_invariant(self):
        generators = enumerate_S(self.ctx)
        self.assertEqual(len(generators), 2)
        supports = sorted(chip_divisor(self.ctx, f).support for f in generators)
        base = self.ctx.base
        self.assertEqual(supports, sorted([[base.point('e1', Fraction(5, 8))], [base.point('e2', Fraction(5, 8))]]))
        self.assertEqual([f for f in generators if self.ctx.action.is_invariant_function(f)], [])

    def test_invariant_generators_exist(self):
        generators = enumerate_SK(self.ctx)
        self.assertEqual(len(generators), 1)
        self.assertTrue(generators[0].is_constant)
        self.assertEqual(len(minimal_generators(self.ctx, generators)), 1)
        self.assertTrue(is_extremal_invariant(self.ctx, self.zero))

    def test_express_constants(self):
        generators = enumerate_SK(self.ctx)
        for value in (0, Fraction(3, 7), -2):
            combination = express(self.ctx, PLFunction.constant(self.ctx.curve, value), generators)
            self.assertEqual(combination, TropicalCombination.single(0, value))

    def test_invariant_linear_system_needs_invariant_divisor(self):
        with self.assertRaises(NonInvariantDivisorError):
            invariant_linear_system(self.ctx)

    def test_pulled_back_quotient_member_is_not_a_member(self):
        quotient = self.ctx.quotient.quotient
        g = PLFunction.from_samples(
            quotient, {'p': 0, 'q': Fraction(-1, 4)},
            {'e1': [(Fraction(1, 2), 0), (Fraction(3, 4), Fraction(-1, 4))]},
        )
        pulled = pull_back_function(self.ctx.phi, g)
        self.assertTrue(self.ctx.action.is_invariant_function(pulled))
        self.assertFalse(in_RK(self.ctx, pulled))


class SegmentFlipTests(SimpleTestCase):

    def setUp(self):
        self.ctx = flip_context()
        self.model = self.ctx.curve
        self.generators = enumerate_SK(self.ctx)
        ends = Subgraph.from_points(self.model, [at('a'), at('b')])
        self.valley = chip_firing(ends, 1)
        self.shallow = chip_firing(ends, Fraction(1, 2))

    def test_generators(self):
        self.assertEqual(len(self.generators), 2)
        self.assertIsNotNone(self.generators.index_of(self.ctx.on_base(self.valley)))
        self.assertIsNotNone(self.generators.index_of(self.ctx.on_base(PLFunction.constant(self.model))))

    def test_minimal_generators(self):
        minimal = minimal_generators(self.ctx, self.generators)
        self.assertEqual(len(minimal), 2)
        for f in self.generators:
            if is_extremal_invariant(self.ctx, f):
                self.assertTrue(in_SK(self.ctx, f))

    def test_shallow_valley_splits(self):
        self.assertTrue(in_RK(self.ctx, self.shallow))
        self.assertFalse(in_SK(self.ctx, self.shallow))
        self.assertEqual(cut_orbit_count(self.ctx, self.shallow), 1)
        self.assertFalse(is_extremal_invariant(self.ctx, self.shallow))

    def test_express(self):
        combination = express(self.ctx, self.shallow, self.generators)
        self.assertEqual(len(combination.terms), 2)
        self.assertEqual(combination.evaluate(self.generators), self.ctx.on_base(self.shallow))

    def test_express_combinations(self):
        first, second = self.generators
        for a, b in ((0, 0), (Fraction(-1, 3), 0), (1, Fraction(5, 2)), (Fraction(-3, 4), Fraction(1, 8))):
            f = trop_add(trop_scale(a, first), trop_scale(b, second))
            combination = express(self.ctx, f, self.generators)
            self.assertEqual(combination.evaluate(self.generators), f)

    def test_express_a_raised_valley(self):
        valley = self.ctx.on_base(self.valley)
        zero = PLFunction.constant(self.ctx.base)
        for c in (Fraction(1, 6), Fraction(1, 3), Fraction(2, 3), Fraction(5, 6)):
            f = trop_add(zero, trop_scale(c, valley))
            self.assertFalse(in_SK(self.ctx, f))
            combination = express(self.ctx, f, self.generators)
            self.assertEqual(combination.evaluate(self.generators), f)

    def test_express_a_generator(self):
        for index, f in enumerate(self.generators):
            self.assertEqual(express(self.ctx, f, self.generators), TropicalCombination.single(index, 0))

    def test_express_needs_membership(self):
        with self.assertRaises(MembershipError):
            express(self.ctx, chip_firing(Subgraph.from_points(self.model, [at('a')]), 1), self.generators)

    def test_leaving_out_a_generator_breaks_expression(self):
        for index, f in enumerate(self.generators):
            rest = self.generators.restricted([j for j in range(len(self.generators)) if j != index])
            with self.assertRaises(MissingGeneratorError):
                express(self.ctx, f, rest)

    def test_push_forward_is_injective(self):
        classes = push_forward_classes(self.ctx, self.generators)
        self.assertEqual(len(set(classes)), len(self.generators))

    def test_invariant_linear_system(self):
        midpoint = self.model.point('e', 1)
        divisors = invariant_linear_system(self.ctx, self.generators)
        self.assertIn(Divisor.from_terms(self.model, [(at('a'), 1), (at('b'), 1)]), divisors)
        self.assertIn(Divisor.from_terms(self.model, [(midpoint, 2)]), divisors)

    def test_semimodule_closure(self):
        for f, g in ((self.valley, self.shallow), (self.shallow, PLFunction.constant(self.model, 1))):
            self.assertTrue(in_RK(self.ctx, trop_add(f, g)))
            self.assertTrue(in_RK(self.ctx, trop_scale(Fraction(2, 3), f)))

    def test_serialization(self):
        data = GeneratorSetSerializer(self.generators, context={'ctx': self.ctx}).data
        self.assertEqual(len(data['generators']), 2)
        self.assertFalse(data['empty_system'])
        combination = express(self.ctx, self.shallow, self.generators)
        terms = CombinationSerializer(combination).data['terms']
        self.assertEqual(sorted(t['coefficient'] for t in terms), ['-1/2', '0'])


class LinearEquivalenceTests(SimpleTestCase):

    def test_segment(self):
        model = segment()
        f = linear_equivalence(Divisor.from_terms(model, [(at('a'), 1)]), Divisor.from_terms(model, [(at('b'), 1)]))
        self.assertEqual(f, line_on_segment(-1))

    def test_circle_points_are_rigid(self):
        model = circle()
        self.assertIsNone(linear_equivalence(
            Divisor.from_terms(model, [(at('p'), 1)]), Divisor.from_terms(model, [(at('q'), 1)]),
        ))

    def test_degree_mismatch(self):
        model = segment()
        self.assertIsNone(linear_equivalence(Divisor.zero(model), Divisor.from_terms(model, [(at('a'), 1)])))

    def test_agrees_with_enumeration(self):
        ctx = example_context()
        model = ctx.curve
        target = Divisor.from_terms(model, [(circle_point(model, '5/8'), 2)])
        f = linear_equivalence(ctx.divisor, target)
        self.assertIsNotNone(f)
        self.assertEqual(ctx.divisor + principal_divisor(f), target)

    def test_rays(self):
        model = ray()
        f = linear_equivalence(Divisor.from_terms(model, [(at('o'), 1)]), Divisor.from_terms(model, [(at('inf'), 1)]))
        self.assertEqual(f.ray_slope('r'), -1)


class DoubleFlipTests(SimpleTestCase):

    def setUp(self):
        self.ctx = double_flip_context()
        self.generators = enumerate_SK(self.ctx)
        ends = Subgraph.from_points(self.ctx.curve, [at('a'), at('b')])
        self.valley = self.ctx.on_base(chip_firing(ends, 1))

    def test_generators(self):
        self.assertEqual(len(self.generators), 3)
        for f in (PLFunction.constant(self.ctx.base), self.valley, scaled(self.valley, 2)):
            self.assertIsNotNone(self.generators.index_of(f))

    def test_every_generator_is_needed(self):
        for index, f in enumerate(self.generators):
            rest = self.generators.restricted([j for j in range(len(self.generators)) if j != index])
            with self.assertRaises(MissingGeneratorError):
                express(self.ctx, f, rest)


class MeshGeneratorTests(SimpleTestCase):
    """enumerate_S against a brute-force search over functions linear on sixths of each edge."""

    def assertMatchesMesh(self, ctx, expected):
        order, sections = mesh_generators(ctx.curve, ctx.divisor)
        generators = enumerate_S(ctx)
        found = set()
        for g in generators:
            g = ctx.on_curve(g)
            found.add(tuple(g(point) - g(order[0]) for point in order))
        self.assertEqual(len(sections), expected)
        self.assertEqual(len(generators), expected)
        self.assertEqual(found, sections)

    def test_segment(self):
        self.assertMatchesMesh(trivial_context(segment(), [('a', 1)]), 2)
        self.assertMatchesMesh(trivial_context(segment(), [('a', 1), ('b', 1)]), 3)
        self.assertMatchesMesh(trivial_context(segment(), [('a', 2)]), 3)

    def test_circle(self):
        self.assertMatchesMesh(trivial_context(circle(), [('p', 1)]), 1)
        self.assertMatchesMesh(trivial_context(circle(), [('p', 1), ('q', 1)]), 2)

    def test_theta(self):
        self.assertMatchesMesh(trivial_context(theta(), [('u', 1)]), 1)


class RandomMemberTests(SimpleTestCase):
    """Seeded tropical combinations of generators."""

    def setUp(self):
        self.rng = random.Random(1618)
        contexts = [
            flip_context(),
            double_flip_context(),
            trivial_context(segment(), [('a', 2)]),
            trivial_context(circle(), [('p', 1), ('q', 1)]),
            example_context(),
        ]
        self.cases = [(ctx, enumerate_SK(ctx)) for ctx in contexts]

    def test_express_recovers_combinations(self):
        for i in range(100):
            ctx, generators = self.cases[i % 4]
            f = random_member(self.rng, generators)
            with self.subTest(i=i):
                self.assertTrue(in_RK(ctx, f))
                self.assertEqual(express(ctx, f, generators).evaluate(generators), f)

    def test_extremal_members_are_generators(self):
        for i in range(200):
            ctx, generators = self.cases[i % len(self.cases)]
            f = random_member(self.rng, generators)
            with self.subTest(i=i):
                if is_extremal_invariant(ctx, f):
                    self.assertTrue(in_SK(ctx, f))

    def test_in_S_agrees_with_every_subset(self):
        contexts = [
            trivial_context(segment(), [('a', 2)]),
            trivial_context(circle(), [('p', 1), ('q', 1)]),
            trivial_context(circle(), [('p', 3)]),
        ]
        cases = [(ctx, enumerate_SK(ctx)) for ctx in contexts]
        for i in range(60):
            ctx, generators = cases[i % len(cases)]
            f = random_member(self.rng, generators)
            support = chip_divisor(ctx, f).support
            smooth = [x for x in support if valence(ctx.base, x) == 2]
            if len(smooth) > 12:
                continue
            cut = any(
                is_cut_set(ctx.base, subset)
                for size in range(1, len(smooth) + 1)
                for subset in itertools.combinations(smooth, size)
            )
            with self.subTest(i=i):
                self.assertEqual(in_S(ctx, f), not cut)
                if not any(x.is_vertex for x in support):
                    self.assertEqual(in_SK(ctx, f), in_S(ctx, f))
