import random
from fractions import Fraction

from django.test import SimpleTestCase

from metric_graph.embedding import Chart, refine
from metric_graph.graph import PointRef
from metric_graph.scalars import INF, NEG_INF
from metric_graph.testing import circle, circle_point, ray, segment, theta, tripod
from metric_graph.topology import Subgraph
from troplin.exceptions import (
    ConflictingInfinityError, InvalidSubgraphError, NoPrincipalDivisorError, NonIntegerSlopeError,
)
from .chip_firing import ChipFiringMove, chip_firing, decompose_chip_firing
from .divisor import Divisor
from .functions import (
    PLFunction, linear_combination, ord_at, principal_divisor, scaled, transport,
    trop_add, trop_mul, trop_scale,
)
from .serializers import DivisorSerializer, FunctionSerializer
from .testing import random_function


def at(vertex_id):
    return PointRef.at_vertex(vertex_id)


def tent(model=None):
    """-min(1/2, d(x, p)) on the circle of circumference 2."""
    model = model or circle()
    return chip_firing(Subgraph.from_points(model, [at('p')]), Fraction(1, 2))


class DivisorTests(SimpleTestCase):

    def test_degree_and_effectiveness(self):
        model = segment(2)
        divisor = Divisor.from_terms(model, [(at('a'), 2), (model.point('e', 1), -1), (at('a'), -1)])
        self.assertEqual(divisor.degree, 0)
        self.assertFalse(divisor.is_effective)
        self.assertEqual(divisor.coefficient(at('a')), 1)

    def test_arithmetic(self):
        model = segment()
        d = Divisor.from_terms(model, [(at('a'), 1)])
        e = Divisor.from_terms(model, [(at('b'), 1)])
        self.assertEqual((d + e - e), d)
        self.assertEqual(len(d - d), 0)


class EvaluationTests(SimpleTestCase):

    def test_constant(self):
        f = PLFunction.constant(theta(), 5)
        self.assertEqual(f(theta().point('b', Fraction(1, 3))), 5)

    def test_chip_firing_values(self):
        model = segment(3)
        f = chip_firing(Subgraph.from_points(model, [at('a')]), 1)
        self.assertEqual([f(at('a')), f(model.point('e', 1)), f(at('b'))], [0, -1, -1])
        self.assertEqual(f(model.point('e', Fraction(1, 2))), Fraction(-1, 2))

    def test_ray_towards_infinity(self):
        model = ray()
        up = PLFunction.from_samples(model, {'o': 0}, ray_slopes={'r': 1})
        self.assertEqual(up(at('inf')), INF)
        down = chip_firing(Subgraph.from_points(model, [at('o')]), INF)
        self.assertEqual(down(at('inf')), NEG_INF)
        self.assertEqual(down(model.point('r', 5)), -5)

    def test_whole_curve_fires_to_zero(self):
        model = theta()
        self.assertEqual(chip_firing(Subgraph.whole(model), 1), PLFunction.constant(model))


class OrdTests(SimpleTestCase):

    def test_segment_move(self):
        model = segment(3)
        f = chip_firing(Subgraph.from_points(model, [at('a')]), 1)
        self.assertEqual(ord_at(f, at('a')), -1)
        self.assertEqual(ord_at(f, model.point('e', 1)), 1)
        self.assertEqual(ord_at(f, model.point('e', 2)), 0)
        self.assertEqual(
            principal_divisor(f),
            Divisor.from_terms(model, [(at('a'), -1), (model.point('e', 1), 1)]),
        )

    def test_circle_tent(self):
        model = circle()
        f = tent(model)
        self.assertEqual(ord_at(f, at('p')), -2)
        self.assertEqual(
            principal_divisor(f),
            Divisor.from_terms(model, [
                (at('p'), -2), (circle_point(model, '1/2'), 1), (circle_point(model, '3/2'), 1),
            ]),
        )

    def test_constant_has_zero_divisor(self):
        self.assertEqual(len(principal_divisor(PLFunction.constant(circle(), 3))), 0)

    def test_ord_at_infinity_is_outgoing_slope(self):
        model = ray()
        down = chip_firing(Subgraph.from_points(model, [at('o')]), INF)
        self.assertEqual(ord_at(down, at('inf')), 1)
        self.assertEqual(principal_divisor(down).degree, 0)

    def test_minus_infinity_has_no_divisor(self):
        with self.assertRaises(NoPrincipalDivisorError):
            principal_divisor(PLFunction.minus_infinity(segment()))


class TropicalOperationTests(SimpleTestCase):

    def test_max_of_two_lines(self):
        model = segment()
        f = PLFunction.from_samples(model, {'a': 0, 'b': -1})
        g = PLFunction.from_samples(model, {'a': -1, 'b': 0})
        h = trop_add(f, g)
        self.assertEqual(h.profiles['e'].breaks, (Fraction(1, 2),))
        self.assertEqual(h.profiles['e'].slopes, (-1, 1))
        self.assertEqual(h(model.point('e', Fraction(1, 2))), Fraction(-1, 2))

    def test_idempotence_and_identity(self):
        f = tent()
        self.assertEqual(trop_add(f, f), f)
        self.assertEqual(trop_scale(0, f), f)
        self.assertEqual(trop_add(f, PLFunction.minus_infinity(f.model)), f)

    def test_scaling_keeps_the_divisor(self):
        f = tent()
        self.assertEqual(principal_divisor(trop_scale(Fraction(7, 3), f)), principal_divisor(f))
        self.assertTrue(trop_scale(Fraction(7, 3), f).same_class(f))
        self.assertFalse(f.same_class(PLFunction.constant(f.model)))

    def test_max_on_rays(self):
        model = ray()
        f = PLFunction.from_samples(model, {'o': 2}, ray_slopes={'r': -1})
        g = PLFunction.from_samples(model, {'o': 0})
        h = trop_add(f, g)
        self.assertEqual(h.profiles['r'].breaks, (Fraction(2),))
        self.assertEqual(h(at('inf')), 0)

    def test_conflicting_infinities(self):
        model = ray()
        up = PLFunction.from_samples(model, {'o': 0}, ray_slopes={'r': 1})
        down = PLFunction.from_samples(model, {'o': 0}, ray_slopes={'r': -1})
        with self.assertRaises(ConflictingInfinityError):
            trop_mul(up, down)
        self.assertEqual(trop_mul(up, down, strict=False), PLFunction.constant(model))

    def test_sign_rule_at_infinity(self):
        model = ray()
        up = PLFunction.from_samples(model, {'o': 0}, ray_slopes={'r': 2})
        down = PLFunction.from_samples(model, {'o': 0}, ray_slopes={'r': -1})
        self.assertEqual(trop_mul(up, down)(at('inf')), INF)

    def test_degree_zero_for_combinations(self):
        model = theta()
        moves = [
            chip_firing(Subgraph.from_points(model, [at('u')]), Fraction(1, 3)),
            chip_firing(Subgraph(model, intervals=frozenset({('a', Fraction(1, 4), Fraction(1, 2))})), Fraction(1, 5)),
            chip_firing(Subgraph(model, edges=frozenset({'b'})), 1),
        ]
        combined = trop_add(trop_scale(Fraction(-1, 7), moves[0]), trop_mul(moves[1], moves[2]))
        self.assertEqual(principal_divisor(combined).degree, 0)

    def test_transport_round_trip(self):
        model = circle()
        f = tent(model)
        fine, embedding = refine(model, {circle_point(model, '1/4')})
        moved = transport(f, Chart.down(embedding), fine)
        self.assertEqual(moved(embedding.to_fine(circle_point(model, '7/4'))), Fraction(-1, 4))
        self.assertEqual(transport(moved, Chart.up(embedding), model), f)

    def test_scaled_requires_integer_slopes(self):
        f = tent()
        self.assertEqual(scaled(f, 2)(at('q')), -1)
        with self.assertRaises(NonIntegerSlopeError):
            scaled(f, Fraction(1, 2))


class ChipFiringTests(SimpleTestCase):

    def test_points_at_infinity_cannot_fire_alone(self):
        model = ray()
        with self.assertRaises(InvalidSubgraphError):
            ChipFiringMove(Subgraph.from_points(model, [at('inf')]), 1)

    def test_reach_must_be_positive(self):
        model = segment()
        with self.assertRaises(InvalidSubgraphError):
            chip_firing(Subgraph.from_points(model, [at('a')]), 0)


class DecompositionTests(SimpleTestCase):

    def assertReconstructs(self, f):
        decomposition = decompose_chip_firing(f)
        self.assertEqual(decomposition.reconstruct(), f)
        return decomposition

    def test_constant(self):
        decomposition = self.assertReconstructs(PLFunction.constant(theta(), Fraction(5, 2)))
        self.assertEqual(decomposition.constant, Fraction(5, 2))
        self.assertEqual(decomposition.terms, ())

    def test_single_move(self):
        model = segment(3)
        f = chip_firing(Subgraph.from_points(model, [at('a')]), 1)
        decomposition = self.assertReconstructs(f)
        self.assertEqual(decomposition.constant, 0)
        self.assertEqual(len(decomposition.terms), 1)
        move, coefficient = decomposition.terms[0]
        self.assertEqual((move.reach, coefficient), (1, 1))
        self.assertTrue(move.source.contains(at('a')))
        self.assertFalse(move.source.contains(model.point('e', Fraction(1, 2))))

    def test_circle_tent(self):
        decomposition = self.assertReconstructs(tent())
        self.assertEqual(len(decomposition.terms), 1)
        self.assertEqual(decomposition.terms[0][0].reach, Fraction(1, 2))

    def test_steep_layers(self):
        model = segment(1)
        f = PLFunction.from_samples(model, {'a': 0, 'b': Fraction(-4, 3)}, {'e': [(Fraction(1, 3), Fraction(-2, 3))]})
        self.assertReconstructs(f)

    def test_rays(self):
        model = ray()
        self.assertReconstructs(PLFunction.from_samples(model, {'o': 0}, ray_slopes={'r': 1}))
        self.assertReconstructs(
            PLFunction.from_samples(model, {'o': 1}, {'r': [(Fraction(2), Fraction(-1))]}, {'r': -3})
        )

    def test_mixed_combinations(self):
        model = tripod()
        f = linear_combination(model, Fraction(1, 3), [
            (chip_firing(Subgraph.from_points(model, [at('o')]), INF), 2),
            (chip_firing(Subgraph.from_points(model, [at('a')]), Fraction(1, 2)), -1),
        ])
        self.assertReconstructs(f)
        loop = theta()
        g = trop_add(
            chip_firing(Subgraph.from_points(loop, [at('u')]), Fraction(1, 3)),
            trop_scale(Fraction(-1, 4), chip_firing(
                Subgraph(loop, intervals=frozenset({('a', Fraction(1, 3), Fraction(2, 3))})), Fraction(1, 2),
            )),
        )
        self.assertReconstructs(g)
        self.assertReconstructs(scaled(g, -3))


    def test_random_functions_reconstruct(self):
        rng = random.Random(4021)
        curves = [segment(), segment(3), circle(), theta(), ray(), tripod()]
        for i in range(1000):
            model = curves[i % len(curves)]
            f = random_function(rng, model)
            with self.subTest(i=i):
                decomposition = self.assertReconstructs(f)
                self.assertTrue(all(coefficient != 0 for _, coefficient in decomposition.terms))


class SerializerTests(SimpleTestCase):

    def test_divisor_document(self):
        model = segment(2)
        serializer = DivisorSerializer(
            data=[
                {'point': {'vertex': 'a'}, 'coeff': 1},
                {'point': {'edge': 'e', 'offset': '1/2', 'anchor': 'b'}, 'coeff': 2},
            ],
            context={'model': model},
        )
        self.assertTrue(serializer.is_valid(), serializer.errors)
        divisor = serializer.validated_data
        self.assertEqual(divisor.coefficient(model.point('e', Fraction(3, 2))), 2)
        self.assertEqual(DivisorSerializer(divisor).data[1]['point'], {'edge': 'e', 'offset': '3/2', 'anchor': 'a'})

    def test_divisor_point_off_curve(self):
        serializer = DivisorSerializer(data=[{'point': {'vertex': 'zz'}, 'coeff': 1}], context={'model': segment()})
        self.assertFalse(serializer.is_valid())

    def test_function_document(self):
        model = segment(2)
        document = {
            'refinement': {
                'vertices': [{'id': 'a'}, {'id': 'm'}, {'id': 'b'}],
                'edges': [
                    {'id': 'e1', 'ends': ['a', 'm'], 'length': '1', 'parent': 'e'},
                    {'id': 'e2', 'ends': ['m', 'b'], 'length': '1', 'parent': 'e'},
                ],
            },
            'values': {'a': '0', 'm': '-1', 'b': '-1'},
            'slopes': {'e1': {'slope': -1, 'from': 'a'}, 'e2': {'slope': 0, 'from': 'b'}},
        }
        serializer = FunctionSerializer(data=document, context={'model': model})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        f = serializer.validated_data
        self.assertEqual(f, chip_firing(Subgraph.from_points(model, [at('a')]), 1))
        again = FunctionSerializer(data=FunctionSerializer(f).data, context={'model': model})
        self.assertTrue(again.is_valid(), again.errors)
        self.assertEqual(again.validated_data, f)

    def test_inconsistent_function_document(self):
        model = segment()
        document = {
            'refinement': {'vertices': [{'id': 'a'}, {'id': 'b'}], 'edges': [{'id': 'e', 'ends': ['a', 'b'], 'length': '1'}]},
            'values': {'a': '0', 'b': '3'},
            'slopes': {'e': {'slope': 1, 'from': 'a'}},
        }
        serializer = FunctionSerializer(data=document, context={'model': model})
        self.assertFalse(serializer.is_valid())
        self.assertEqual(serializer.errors['non_field_errors'][0].code, 'inconsistent_function')
