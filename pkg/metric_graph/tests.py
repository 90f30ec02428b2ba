import random
from fractions import Fraction

from django.test import SimpleTestCase

from troplin.exceptions import (
    EmptySubgraphError, InvalidModelError, InvalidSubgraphError, PointOffCurveError,
)
from .embedding import Chart, canonical_loopless_model, coarsen, refine
from .graph import PointRef
from .scalars import INF, NEG_INF, format_scalar, to_scalar
from .serializers import CurveSerializer, RationalField
from .testing import (
    circle, circle_point, circle_three_arcs, curve, line, one_vertex_circle, property_curves,
    random_point, ray, segment, singleton, theta,
)
from .topology import Subgraph, dist_to_subgraph, distance, is_cut_set, valence


class ScalarTests(SimpleTestCase):

    def test_infinity_saturates(self):
        self.assertEqual(Fraction(3) + INF, INF)
        self.assertEqual(min(Fraction(3), INF), 3)
        self.assertTrue(NEG_INF < Fraction(-10) < INF)
        self.assertEqual(-INF, NEG_INF)

    def test_parse_and_format(self):
        self.assertEqual(to_scalar('6/4'), Fraction(3, 2))
        self.assertEqual(to_scalar('-inf'), NEG_INF)
        self.assertEqual(format_scalar(Fraction(3, 2)), '3/2')
        self.assertEqual(format_scalar(INF), '+inf')

    def test_whole_numbers_drop_the_denominator(self):
        self.assertEqual(format_scalar(Fraction(2)), '2')
        self.assertEqual(format_scalar(Fraction(-4, 2)), '-2')
        self.assertEqual(to_scalar('2/1'), 2)
        self.assertEqual(format_scalar(to_scalar('2/1')), '2')
        self.assertEqual(RationalField().to_representation(Fraction(3, 3)), '1')


class ModelValidationTests(SimpleTestCase):

    def test_disconnected_graph_is_rejected(self):
        with self.assertRaises(InvalidModelError) as ctx:
            curve(['a', 'b', 'c'], [('e', 'a', 'b', 1)])
        self.assertEqual(ctx.exception.code, 'disconnected')

    def test_nonpositive_length_is_rejected(self):
        with self.assertRaises(InvalidModelError) as ctx:
            curve(['a', 'b'], [('e', 'a', 'b', 0)])
        self.assertEqual(ctx.exception.code, 'nonpositive_length')

    def test_infinite_edge_is_oriented_from_finite_end(self):
        model = curve(['o', 'inf'], [('r', 'inf', 'o', 'inf')], at_infinity={'inf'})
        self.assertEqual(model.edge('r').tail, 'o')

    def test_points_normalize(self):
        model = segment(2)
        self.assertEqual(model.point('e', Fraction(1, 2), anchor='b'), model.point('e', Fraction(3, 2)))
        self.assertEqual(model.point('e', 2), PointRef.at_vertex('b'))
        with self.assertRaises(PointOffCurveError):
            model.point('e', 3)


class CanonicalModelTests(SimpleTestCase):

    def test_smooth_vertex_is_removed(self):
        model = curve(['a', 'm', 'b'], [('e1', 'a', 'm', '1/2'), ('e2', 'm', 'b', '1/2')])
        canonical = canonical_loopless_model(model)
        self.assertEqual(canonical.vertex_ids, ['a', 'b'])
        self.assertEqual([(e.id, e.length) for e in canonical.edges], [('e1', 1)])

    def test_circle_keeps_one_vertex_and_its_antipode(self):
        canonical = canonical_loopless_model(circle_three_arcs())
        self.assertEqual(len(canonical.vertices), 2)
        self.assertEqual(sorted(e.length for e in canonical.edges), [Fraction(3, 2)] * 2)
        self.assertIn('x', canonical.vertex_ids)

    def test_theta_is_unchanged(self):
        self.assertEqual(canonical_loopless_model(theta()), theta())

    def test_idempotent(self):
        once = canonical_loopless_model(circle_three_arcs())
        twice = canonical_loopless_model(once)
        self.assertEqual(len(twice.vertices), len(once.vertices))
        self.assertEqual(sorted(e.length for e in twice.edges), sorted(e.length for e in once.edges))
        self.assertEqual(canonical_loopless_model(theta()), theta())

    def test_line_keeps_an_origin(self):
        model = curve(
            ['i1', 'a', 'b', 'i2'],
            [('l', 'a', 'i1', 'inf'), ('m', 'a', 'b', 1), ('r', 'b', 'i2', 'inf')],
            at_infinity={'i1', 'i2'},
        )
        canonical = canonical_loopless_model(model)
        self.assertEqual(len(canonical.vertices), 3)
        self.assertEqual(len(canonical.edges), 2)
        self.assertEqual(canonical_loopless_model(line()), line())

    def test_singleton_is_unchanged(self):
        self.assertEqual(canonical_loopless_model(singleton()), singleton())


class RefinementTests(SimpleTestCase):

    def test_refine_segment(self):
        model = segment(2)
        fine, embedding = refine(model, {model.point('e', 1)})
        self.assertEqual(len(fine.vertices), 3)
        self.assertEqual(sorted(e.length for e in fine.edges), [1, 1])
        middle = embedding.to_fine(model.point('e', 1))
        self.assertTrue(middle.is_vertex)
        self.assertEqual(embedding.to_coarse(middle), model.point('e', 1))

    def test_refine_one_vertex_circle_at_midpoint(self):
        model = one_vertex_circle()
        fine, _ = refine(model, {model.midpoint('loop')})
        self.assertEqual((len(fine.vertices), len(fine.edges)), (2, 2))

    def test_refine_nothing_is_identity(self):
        model = theta()
        fine, _ = refine(model, set())
        self.assertIs(fine, model)

    def test_refine_ray(self):
        model = ray()
        fine, embedding = refine(model, {model.point('r', 2)})
        self.assertEqual(sorted(str(e.length) for e in fine.edges), ['+inf', '2'])
        self.assertEqual(embedding.to_coarse(fine.point('r:1', 3)), model.point('r', 5))

    def test_charts_round_trip_through_coarsening(self):
        model = curve(['a', 'm', 'b'], [('e1', 'a', 'm', '1/2'), ('e2', 'm', 'b', '1/2')])
        coarse, merge = coarsen(model)
        chart = Chart.up(merge)
        self.assertEqual(chart(PointRef.at_vertex('m')), coarse.point('e1', Fraction(1, 2)))
        point = model.point('e2', Fraction(1, 4))
        self.assertEqual(chart.inverse()(chart(point)), point)

    def test_coarsening_reversed_chain(self):
        model = curve(['a', 'm', 'b'], [('e2', 'a', 'm', 1), ('e1', 'b', 'm', 2)])
        coarse, merge = coarsen(model)
        self.assertEqual(coarse.edge('e1').tail, 'b')
        self.assertEqual(merge.to_coarse(PointRef.at_vertex('m')), coarse.point('e1', 2))
        self.assertEqual(merge.to_coarse(model.point('e2', Fraction(1, 2))), coarse.point('e1', Fraction(5, 2)))


class DistanceTests(SimpleTestCase):

    def test_segment_distance(self):
        model = segment(3)
        self.assertEqual(distance(model, PointRef.at_vertex('a'), model.point('e', 1)), 1)

    def test_circle_antipode(self):
        model = circle()
        self.assertEqual(distance(model, PointRef.at_vertex('p'), PointRef.at_vertex('q')), 1)
        self.assertEqual(distance(model, circle_point(model, '1/2'), circle_point(model, '7/4')), Fraction(3, 4))

    def test_point_at_infinity_is_infinitely_far(self):
        model = ray()
        self.assertEqual(distance(model, PointRef.at_vertex('o'), PointRef.at_vertex('inf')), INF)
        self.assertEqual(distance(model, PointRef.at_vertex('inf'), PointRef.at_vertex('inf')), 0)

    def test_distance_to_subgraph(self):
        model = segment(3)
        source = Subgraph.from_points(model, [PointRef.at_vertex('a')])
        self.assertEqual(dist_to_subgraph(model, model.point('e', 2), source), 2)
        ring = circle()
        source = Subgraph.from_points(ring, [PointRef.at_vertex('p')])
        self.assertEqual(dist_to_subgraph(ring, circle_point(ring, '3/2'), source), Fraction(1, 2))
        self.assertEqual(dist_to_subgraph(ring, circle_point(ring, '1/4'), source), Fraction(1, 4))

    def test_whole_curve_gives_zero(self):
        model = theta()
        self.assertEqual(dist_to_subgraph(model, model.point('b', Fraction(1, 3)), Subgraph.whole(model)), 0)

    def test_empty_subgraph_is_rejected(self):
        model = segment()
        with self.assertRaises(EmptySubgraphError):
            dist_to_subgraph(model, PointRef.at_vertex('a'), Subgraph(model))


class SubgraphTests(SimpleTestCase):

    def test_boundary_of_interval(self):
        model = segment(3)
        piece = Subgraph(model, intervals=frozenset({('e', Fraction(0), Fraction(1))}))
        self.assertEqual(piece.boundary(), [(model.point('e', 1), 1)])

    def test_complement_closure(self):
        model = segment(3)
        piece = Subgraph(model, intervals=frozenset({('e', Fraction(0), Fraction(1))}))
        rest = piece.complement_closure()
        self.assertTrue(rest.contains(model.point('e', 2)))
        self.assertTrue(rest.contains(model.point('e', 1)))
        self.assertFalse(rest.contains(PointRef.at_vertex('a')))

    def test_isolated_point_at_infinity_cannot_fire(self):
        model = ray()
        with self.assertRaises(InvalidSubgraphError):
            Subgraph.from_points(model, [PointRef.at_vertex('inf')]).check_firing_source()


class CutSetTests(SimpleTestCase):

    def test_segment_interior_point(self):
        model = segment()
        self.assertTrue(is_cut_set(model, {model.point('e', Fraction(1, 2))}))
        self.assertFalse(is_cut_set(model, {PointRef.at_vertex('a')}))

    def test_circle(self):
        model = circle()
        self.assertFalse(is_cut_set(model, {circle_point(model, '1/2')}))
        self.assertTrue(is_cut_set(model, {circle_point(model, '1/2'), circle_point(model, '3/2')}))

    def test_theta_single_point(self):
        model = theta()
        self.assertFalse(is_cut_set(model, {model.point('a', Fraction(1, 2))}))

    def test_empty_set(self):
        self.assertFalse(is_cut_set(theta(), set()))
        self.assertFalse(is_cut_set(singleton(), {PointRef.at_vertex('x')}))


class MetricPropertyTests(SimpleTestCase):
    """Seeded random checks of the metric axioms and of cut-set monotonicity."""

    def setUp(self):
        self.rng = random.Random(1117)
        self.curves = property_curves()

    def test_metric_axioms(self):
        for i in range(150):
            model = self.rng.choice(self.curves)
            x, y, z = (random_point(self.rng, model) for _ in range(3))
            with self.subTest(i=i):
                self.assertEqual(distance(model, x, x), 0)
                self.assertEqual(distance(model, x, y), distance(model, y, x))
                self.assertLessEqual(distance(model, x, z), distance(model, x, y) + distance(model, y, z))
                if x != y:
                    self.assertGreater(distance(model, x, y), 0)

    def test_cut_sets_are_monotone(self):
        for i in range(150):
            model = self.rng.choice(self.curves)
            first = {random_point(self.rng, model) for _ in range(self.rng.randint(1, 3))}
            more = first | {random_point(self.rng, model) for _ in range(self.rng.randint(1, 2))}
            with self.subTest(i=i):
                if is_cut_set(model, first):
                    self.assertTrue(is_cut_set(model, more))

    def test_interior_points_of_trees_cut(self):
        for i in range(60):
            model = self.rng.choice([m for m in self.curves if m.genus == 0])
            point = random_point(self.rng, model, vertex_share=0)
            with self.subTest(i=i):
                self.assertTrue(is_cut_set(model, {point}))


class ValenceTests(SimpleTestCase):

    def test_valences(self):
        self.assertEqual(valence(segment(), segment().point('e', Fraction(1, 3))), 2)
        self.assertEqual(valence(theta(), PointRef.at_vertex('u')), 3)
        self.assertEqual(valence(segment(), PointRef.at_vertex('a')), 1)
        self.assertEqual(valence(ray(), PointRef.at_vertex('inf')), 1)


class CurveSerializerTests(SimpleTestCase):

    def test_valid_curve(self):
        serializer = CurveSerializer(data={
            'vertices': [{'id': 'a'}, {'id': 'b'}],
            'edges': [{'id': 'e', 'ends': ['a', 'b'], 'length': '3/2'}],
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        model = serializer.validated_data['model']
        self.assertEqual(model.edge('e').length, Fraction(3, 2))
        self.assertEqual(CurveSerializer(model).data['edges'][0]['length'], '3/2')

    def test_all_errors_are_reported(self):
        serializer = CurveSerializer(data={
            'vertices': [{'id': 'a'}, {'id': 'b'}],
            'edges': [
                {'id': 'e', 'ends': ['a', 'b'], 'length': '0/1'},
                {'id': 'f', 'ends': ['a', 'b'], 'length': 'x/2'},
            ],
        })
        self.assertFalse(serializer.is_valid())
        codes = [serializer.errors['edges'][0]['length'][0].code, serializer.errors['edges'][1]['length'][0].code]
        self.assertEqual(codes, ['nonpositive_length', 'malformed_rational'])

    def test_dangling_id(self):
        serializer = CurveSerializer(data={
            'vertices': [{'id': 'a'}],
            'edges': [{'id': 'e', 'ends': ['a', 'zz'], 'length': '1'}],
        })
        self.assertFalse(serializer.is_valid())
        self.assertEqual(serializer.errors['non_field_errors'][0].code, 'dangling_id')

    def test_infinite_length(self):
        serializer = CurveSerializer(data={
            'vertices': [{'id': 'o'}, {'id': 'w', 'at_infinity': True}],
            'edges': [{'id': 'r', 'ends': ['w', 'o'], 'length': 'inf'}],
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(CurveSerializer(serializer.validated_data['model']).data['edges'][0],
                         {'id': 'r', 'ends': ['o', 'w'], 'length': 'inf'})
