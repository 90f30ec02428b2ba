import random
from fractions import Fraction

from django.test import SimpleTestCase

from divisors_functions.chip_firing import chip_firing
from divisors_functions.divisor import Divisor
from divisors_functions.functions import PLFunction, principal_divisor, trop_add, trop_scale
from divisors_functions.testing import random_function
from group_action.group import close_group
from group_action.testing import (
    cherry_group, line_flip_group, reflection_group, rotation_group, segment_flip_group,
)
from metric_graph.graph import PointRef
from metric_graph.testing import circle, circle_point, curve, random_point, segment, singleton, theta
from metric_graph.topology import Subgraph
from troplin.exceptions import InvalidModelError, NotHarmonicError
from .construction import build_quotient
from .morphism import (
    EdgeAssignment, Morphism, preimage_subgraph, pull_back_function, push_forward_divisor,
    push_forward_function,
)
from .serializers import QuotientSerializer


def at(vertex_id):
    return PointRef.at_vertex(vertex_id)


def sample_points(model):
    points = [at(v.id) for v in model.vertices]
    for edge in model.edges:
        points.append(model.sample_point(edge.id))
        points.append(model.midpoint(edge.id))
    return points


class BuildQuotientTests(SimpleTestCase):

    def test_trivial_group(self):
        result = build_quotient(close_group(theta()))
        self.assertEqual(result.quotient, theta())
        self.assertEqual(result.morphism, Morphism.identity(theta()))
        self.assertEqual(result.morphism.is_harmonic(), (True, 1))

    def test_reflection_folds_the_circle(self):
        result = build_quotient(reflection_group())
        self.assertEqual(result.quotient.vertex_ids, ['p', 'q'])
        self.assertEqual([(e.id, e.length) for e in result.quotient.edges], [('e1', 1)])
        self.assertEqual(result.morphism.is_harmonic(), (True, 2))
        self.assertEqual(len(result.fiber(result.quotient.point('e1', Fraction(1, 2)))), 2)
        self.assertEqual(result.phi(circle_point(circle(), '3/2')), result.quotient.point('e1', Fraction(1, 2)))

    def test_rotation_halves_the_circle(self):
        result = build_quotient(rotation_group())
        self.assertEqual(len(result.quotient.vertices), 2)
        self.assertEqual(result.quotient.genus, 1)
        self.assertEqual(sum(e.length for e in result.quotient.edges), 1)
        self.assertEqual(result.morphism.is_harmonic(), (True, 2))

    def test_stabilizer_dilates(self):
        result = build_quotient(cherry_group())
        lengths = {e.id: e.length for e in result.quotient.edges}
        self.assertEqual(lengths, {'s': 2, 't1': 1})
        self.assertEqual(result.morphism.edges['s'].dilation, 2)
        self.assertEqual(result.morphism.is_harmonic(), (True, 2))

    def test_rays(self):
        result = build_quotient(line_flip_group())
        self.assertEqual(len(result.quotient.edges), 1)
        self.assertTrue(result.quotient.edges[0].is_infinite)
        self.assertEqual(result.morphism.is_harmonic(), (True, 2))

    def test_degree_is_the_group_order_everywhere(self):
        for group in (reflection_group(), rotation_group(), cherry_group(), line_flip_group()):
            result = build_quotient(group)
            phi = result.morphism
            for point in sample_points(result.quotient):
                if result.quotient.is_at_infinity(point):
                    continue
                total = sum(phi.local_degree(x) for x in phi.fiber(point))
                self.assertEqual(total, group.order)

    def test_fibers_agree(self):
        for group in (reflection_group(), rotation_group(), cherry_group()):
            result = build_quotient(group)
            for point in sample_points(result.quotient):
                self.assertEqual(sorted(result.fiber(point)), sorted(result.morphism.fiber(point)))

    def test_phi_is_constant_on_orbits(self):
        for group in (reflection_group(), rotation_group(), cherry_group(), line_flip_group()):
            result = build_quotient(group)
            model = result.invariant_model
            for sigma in result.structure.action.elements:
                for point in sample_points(model):
                    self.assertEqual(
                        result.morphism.image(sigma.apply_point(model, point)),
                        result.morphism.image(point),
                    )

    def test_serialization(self):
        data = QuotientSerializer(build_quotient(reflection_group())).data
        self.assertEqual(data['degree'], 2)
        self.assertEqual(data['phi']['edge_map']['e2'], {'to': 'e1', 'reversed': True})
        self.assertEqual(data['quotient']['edges'][0]['length'], '1')


class HarmonicityTests(SimpleTestCase):

    def test_identity(self):
        self.assertEqual(Morphism.identity(segment()).is_harmonic(), (True, 1))

    def test_collapse_to_a_point(self):
        phi = Morphism.build(
            segment(), singleton(), {'a': 'x', 'b': 'x'}, {'e': EdgeAssignment(vertex='x', dilation=0)},
        )
        self.assertEqual(phi.is_harmonic(), (True, 0))
        self.assertEqual(Morphism.identity(singleton()).is_harmonic(), (True, 'any'))

    def test_unbalanced_fold(self):
        source = curve(['a', 'o', 'b1', 'b2'], [('s', 'a', 'o', 1), ('t1', 'o', 'b1', 1), ('t2', 'o', 'b2', 1)])
        target = curve(['a', 'o', 'b'], [('s', 'a', 'o', 1), ('t', 'o', 'b', 1)])
        phi = Morphism.build(
            source, target, {'a': 'a', 'o': 'o', 'b1': 'b', 'b2': 'b'},
            {'s': EdgeAssignment('s'), 't1': EdgeAssignment('t'), 't2': EdgeAssignment('t')},
        )
        self.assertIsNone(phi.local_degree(at('o')))
        self.assertEqual(phi.is_harmonic(), (False, None))
        with self.assertRaises(NotHarmonicError):
            push_forward_function(phi, PLFunction.constant(source))

    def test_lengths_must_dilate(self):
        with self.assertRaises(InvalidModelError) as ctx:
            Morphism.build(segment(1), segment(3), {'a': 'a', 'b': 'b'}, {'e': EdgeAssignment('e', dilation=2)})
        self.assertEqual(ctx.exception.code, 'invalid_morphism')


class PushForwardTests(SimpleTestCase):

    def setUp(self):
        self.result = build_quotient(reflection_group())
        self.phi = self.result.morphism
        self.circle = self.result.invariant_model
        self.segment = self.result.quotient

    def point(self, x):
        return circle_point(self.circle, x)

    def test_divisors(self):
        self.assertEqual(push_forward_divisor(self.phi, Divisor.zero(self.circle)), Divisor.zero(self.segment))
        pair = Divisor.from_terms(self.circle, [(self.point('1/2'), 1), (self.point('3/2'), 1)])
        self.assertEqual(
            push_forward_divisor(self.phi, pair),
            Divisor.from_terms(self.segment, [(self.segment.point('e1', Fraction(1, 2)), 2)]),
        )
        fixed = Divisor.from_terms(self.circle, [(at('p'), 1)])
        self.assertEqual(push_forward_divisor(self.phi, fixed), Divisor.from_terms(self.segment, [(at('p'), 1)]))

    def test_degree_is_preserved(self):
        divisor = Divisor.from_terms(self.circle, [
            (self.point('1/3'), 2), (at('q'), -1), (self.point('7/5'), 3), (self.point('19/10'), -1),
        ])
        self.assertEqual(push_forward_divisor(self.phi, divisor).degree, divisor.degree)

    def test_constant(self):
        self.assertEqual(
            push_forward_function(self.phi, PLFunction.constant(self.circle, 3)),
            PLFunction.constant(self.segment, 6),
        )

    def test_invariant_tent(self):
        tent = chip_firing(Subgraph.from_points(self.circle, [at('p')]), Fraction(1, 2))
        pushed = push_forward_function(self.phi, tent)
        expected = PLFunction.from_samples(self.segment, {'p': 0, 'q': -1}, {'e1': [(Fraction(1, 2), -1)]})
        self.assertEqual(pushed, expected)
        self.assertEqual(principal_divisor(pushed), push_forward_divisor(self.phi, principal_divisor(tent)))

    def test_divisor_identity_for_non_invariant_functions(self):
        f = trop_add(
            chip_firing(Subgraph.from_points(self.circle, [self.point('1/4')]), Fraction(1, 3)),
            trop_scale(Fraction(-1, 5), chip_firing(Subgraph(self.circle, edges=frozenset({'e2'})), 1)),
        )
        pushed = push_forward_function(self.phi, f)
        self.assertEqual(principal_divisor(pushed), push_forward_divisor(self.phi, principal_divisor(f)))

    def test_values_on_fibers(self):
        tent = chip_firing(Subgraph.from_points(self.circle, [at('q')]), Fraction(3, 4))
        pushed = push_forward_function(self.phi, tent)
        for x in ('0', '1/8', '1/2', '1', '5/4', '7/4'):
            point = self.point(x)
            self.assertEqual(pushed(self.phi.image(point)), 2 * tent(point))

    def test_identity_morphism(self):
        model = theta()
        f = chip_firing(Subgraph.from_points(model, [model.point('a', Fraction(1, 3))]), Fraction(1, 2))
        self.assertEqual(push_forward_function(Morphism.identity(model), f), f)


class RandomPushForwardTests(SimpleTestCase):
    """Seeded instances of the push-forward identities over several quotients."""

    def setUp(self):
        self.rng = random.Random(2718)
        groups = [
            reflection_group(), rotation_group(), cherry_group(), line_flip_group(),
            segment_flip_group(), close_group(theta()),
        ]
        self.results = [build_quotient(group) for group in groups]

    def random_divisor(self, model):
        terms = [
            (random_point(self.rng, model), self.rng.choice((-2, -1, 1, 2, 3)))
            for _ in range(self.rng.randint(1, 4))
        ]
        return Divisor.from_terms(model, terms)

    def test_degree_and_principal_divisors_are_preserved(self):
        for i in range(200):
            result = self.results[i % len(self.results)]
            phi, model = result.morphism, result.invariant_model
            divisor = self.random_divisor(model)
            f = random_function(self.rng, model)
            with self.subTest(i=i):
                self.assertEqual(push_forward_divisor(phi, divisor).degree, divisor.degree)
                self.assertEqual(
                    principal_divisor(push_forward_function(phi, f)),
                    push_forward_divisor(phi, principal_divisor(f)),
                )


class PullBackTests(SimpleTestCase):

    def setUp(self):
        self.result = build_quotient(reflection_group())
        self.phi = self.result.morphism

    def test_constant(self):
        g = PLFunction.constant(self.result.quotient, 4)
        self.assertEqual(pull_back_function(self.phi, g), PLFunction.constant(self.result.invariant_model, 4))

    def test_descending_line_becomes_a_tent(self):
        g = PLFunction.from_samples(self.result.quotient, {'p': 0, 'q': -1})
        pulled = pull_back_function(self.phi, g)
        circle_model = self.result.invariant_model
        self.assertEqual(pulled, chip_firing(Subgraph.from_points(circle_model, [at('p')]), 1))
        self.assertTrue(self.result.structure.action.is_invariant_function(pulled))
        self.assertEqual(
            push_forward_function(self.phi, pulled),
            PLFunction.from_samples(self.result.quotient, {'p': 0, 'q': -2}),
        )

    def test_preimage_subgraph(self):
        quotient = self.result.quotient
        half = Subgraph(quotient, intervals=frozenset({('e1', Fraction(0), Fraction(1, 2))}))
        preimage = preimage_subgraph(self.phi, half)
        model = self.result.invariant_model
        self.assertTrue(preimage.contains(at('p')))
        self.assertTrue(preimage.contains(circle_point(model, '1/4')))
        self.assertTrue(preimage.contains(circle_point(model, '7/4')))
        self.assertFalse(preimage.contains(circle_point(model, '1')))

    def test_pull_back_can_leave_the_linear_system(self):
        model, quotient = self.result.invariant_model, self.result.quotient
        divisor = Divisor.from_terms(model, [(circle_point(model, '1/2'), 1), (circle_point(model, '3/4'), 1)])
        g = PLFunction.from_samples(
            quotient, {'p': 0, 'q': Fraction(-1, 4)},
            {'e1': [(Fraction(1, 2), 0), (Fraction(3, 4), Fraction(-1, 4))]},
        )
        self.assertTrue((push_forward_divisor(self.phi, divisor) + principal_divisor(g)).is_effective)
        pulled = pull_back_function(self.phi, g)
        self.assertTrue(self.result.structure.action.is_invariant_function(pulled))
        self.assertFalse((divisor + principal_divisor(pulled)).is_effective)
        self.assertEqual(
            principal_divisor(pulled).coefficient(circle_point(model, '3/2')), -1,
        )
