from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from divisors_functions.chip_firing import chip_firing
from divisors_functions.divisor import Divisor
from metric_graph.graph import PointRef
from metric_graph.testing import circle, circle_point, circle_three_arcs, curve, theta
from metric_graph.topology import Subgraph
from troplin.exceptions import GroupNotFiniteError, InvalidIsometryError, NotStableError
from .group import close_group, compute_V1, stabilizer
from .invariant import invariant_model, invariant_structure, orbit_data
from .isometry import Isometry
from .serializers import GroupSerializer
from .testing import (
    cherry, cherry_group, line_flip_group, reflection, reflection_group, rotation, rotation_group,
)


def at(vertex_id):
    return PointRef.at_vertex(vertex_id)


def three_arc_rotation():
    return Isometry.from_maps(
        {'x': 'y', 'y': 'z', 'z': 'x'},
        {'a': ('b', False), 'b': ('c', False), 'c': ('a', False)},
    )


class CloseGroupTests(SimpleTestCase):

    def test_no_generators_give_the_trivial_group(self):
        group = close_group(circle())
        self.assertEqual(group.order, 1)
        self.assertTrue(group.identity.is_identity)

    def test_orders(self):
        self.assertEqual(reflection_group().order, 2)
        self.assertEqual(rotation_group().order, 2)
        self.assertEqual(close_group(circle_three_arcs(), [three_arc_rotation()]).order, 3)

    def test_group_axioms(self):
        for group in (reflection_group(), rotation_group(), cherry_group(), line_flip_group()):
            elements = set(group.elements)
            for a in group.elements:
                self.assertIn(a.inverse(), elements)
                self.assertTrue(a.compose(a.inverse()).is_identity)
                for b in group.elements:
                    self.assertIn(a.compose(b), elements)

    def test_bound(self):
        with self.assertRaises(GroupNotFiniteError):
            close_group(circle_three_arcs(), [three_arc_rotation()], bound=2)

    @override_settings(TROPLIN_GROUP_BOUND=1)
    def test_bound_from_settings(self):
        with self.assertRaises(GroupNotFiniteError):
            rotation_group()

    def test_length_mismatch_is_rejected(self):
        model = curve(['a', 'o', 'b'], [('s', 'a', 'o', 1), ('t', 'o', 'b', 2)])
        swap = Isometry.from_maps({'a': 'b', 'o': 'o', 'b': 'a'}, {'s': ('t', True), 't': ('s', True)})
        with self.assertRaises(InvalidIsometryError):
            close_group(model, [swap])

    def test_incidence_is_checked(self):
        broken = Isometry.from_maps({'p': 'p', 'q': 'q'}, {'e1': ('e2', False), 'e2': ('e1', False)})
        with self.assertRaises(InvalidIsometryError):
            broken.validate(circle())


class ActionTests(SimpleTestCase):

    def test_reflection_on_points(self):
        model = circle()
        sigma = reflection()
        self.assertEqual(sigma.apply_point(model, circle_point(model, '1/2')), circle_point(model, '3/2'))
        self.assertEqual(sigma.apply_point(model, at('q')), at('q'))
        self.assertEqual(Isometry.identity(model).apply_point(model, circle_point(model, '1/3')),
                         circle_point(model, '1/3'))

    def test_reflection_on_divisors(self):
        model = circle()
        divisor = Divisor.from_terms(model, [(circle_point(model, '1/2'), 1), (circle_point(model, '3/4'), 1)])
        image = Divisor.from_terms(model, [(circle_point(model, '3/2'), 1), (circle_point(model, '5/4'), 1)])
        self.assertEqual(reflection().apply_divisor(divisor), image)
        self.assertFalse(reflection_group().is_invariant_divisor(divisor))
        self.assertTrue(reflection_group().is_invariant_divisor(divisor + image))

    def test_functions(self):
        model = circle()
        tent_p = chip_firing(Subgraph.from_points(model, [at('p')]), Fraction(1, 2))
        tent_q = chip_firing(Subgraph.from_points(model, [at('q')]), Fraction(1, 2))
        self.assertTrue(reflection_group().is_invariant_function(tent_p))
        self.assertFalse(rotation_group().is_invariant_function(tent_p))
        self.assertEqual(rotation().apply_function(tent_p), tent_q)
        self.assertEqual(rotation().precompose(tent_q), tent_p)

    def test_subgraphs(self):
        model = circle()
        arc = Subgraph(model, intervals=frozenset({('e1', Fraction(1, 4), Fraction(1, 2))}))
        image = reflection().apply_subgraph(arc)
        self.assertTrue(image.contains(circle_point(model, '13/8')))
        self.assertFalse(reflection_group().is_invariant_subgraph(arc))
        self.assertTrue(reflection_group().is_invariant_subgraph(Subgraph.from_points(model, [at('p')])))


class V1Tests(SimpleTestCase):

    def test_examples(self):
        self.assertEqual(compute_V1(close_group(circle())), [])
        self.assertEqual(compute_V1(reflection_group()), [at('p'), at('q')])
        self.assertEqual(compute_V1(rotation_group()), [])
        self.assertEqual(compute_V1(cherry_group()), [at('o')])
        self.assertEqual(compute_V1(line_flip_group()), [at('o')])

    def test_reversed_edge_contributes_its_midpoint(self):
        model = curve(['a', 'b'], [('e', 'a', 'b', 3)])
        flip = Isometry.from_maps({'a': 'b', 'b': 'a'}, {'e': ('e', True)})
        self.assertEqual(compute_V1(close_group(model, [flip])), [model.point('e', Fraction(3, 2))])

    def test_stabilizers_are_locally_constant_off_V1(self):
        model = circle()
        for group in (reflection_group(), rotation_group()):
            exceptional = set(compute_V1(group)) | {at('p'), at('q')}
            for k in range(1, 48):
                x = Fraction(k, 24) + Fraction(1, 97)
                point = circle_point(model, x)
                if point in exceptional:
                    continue
                nearby = circle_point(model, x + Fraction(1, 1000))
                self.assertEqual(set(stabilizer(group, point)), set(stabilizer(group, nearby)))


class InvariantModelTests(SimpleTestCase):

    def test_trivial_group_gives_the_canonical_model(self):
        self.assertEqual(invariant_model(close_group(theta())), theta())

    def test_reflection(self):
        model = invariant_model(reflection_group())
        self.assertEqual(model.vertex_ids, ['p', 'q'])
        self.assertEqual([(e.id, e.length) for e in model.edges], [('e1', 1), ('e2', 1)])

    def test_rotation_splits_the_arcs(self):
        structure = invariant_structure(rotation_group())
        self.assertEqual(len(structure.model.vertices), 4)
        self.assertEqual({e.length for e in structure.model.edges}, {Fraction(1, 2)})
        self.assertEqual(structure.action.order, 2)
        for sigma in structure.action.elements:
            for edge in structure.model.edges:
                image = structure.model.edge(sigma.edge(edge.id)[0])
                self.assertFalse(structure.action.same_vertex_orbit(image.tail, image.head))

    def test_vertex_set_is_stable(self):
        for group in (reflection_group(), rotation_group(), cherry_group(), line_flip_group()):
            structure = invariant_structure(group)
            vertices = set(structure.model.vertex_ids)
            for sigma in structure.action.elements:
                self.assertEqual({sigma.vertex(v) for v in vertices}, vertices)

    def test_chart_round_trip(self):
        structure = invariant_structure(rotation_group())
        point = circle_point(circle(), '1/3')
        self.assertEqual(structure.to_working(structure.chart(point)), point)


class OrbitDataTests(SimpleTestCase):

    def test_trivial(self):
        data = orbit_data(close_group(theta()), theta())
        self.assertEqual(data.edge_orbits, (('a',), ('b',), ('c',)))
        self.assertEqual(set(data.edge_stabilizers.values()), {1})

    def test_reflection(self):
        data = orbit_data(reflection_group())
        self.assertEqual(data.edge_orbits, (('e1', 'e2'),))
        self.assertEqual(data.edge_stabilizers, {'e1': 1, 'e2': 1})
        self.assertEqual(data.vertex_stabilizers, {'p': 2, 'q': 2})

    def test_pointwise_fixed_edge(self):
        data = orbit_data(cherry_group(), cherry())
        self.assertEqual(data.edge_stabilizers['s'], 2)
        self.assertEqual(data.orbit_of_edge('t1'), ('t1', 't2'))

    def test_orbit_stabilizer(self):
        for group in (reflection_group(), rotation_group(), cherry_group(), line_flip_group()):
            data = orbit_data(group)
            for orbit in data.edge_orbits:
                for edge_id in orbit:
                    self.assertEqual(len(orbit) * data.edge_stabilizers[edge_id], data.order)
            for orbit in data.vertex_orbits:
                for vertex_id in orbit:
                    self.assertEqual(len(orbit) * data.vertex_stabilizers[vertex_id], data.order)

    def test_foreign_model(self):
        with self.assertRaises(NotStableError):
            orbit_data(reflection_group(), theta())


class GroupSerializerTests(SimpleTestCase):

    def document(self, edge_map):
        return {
            'model': {
                'vertices': [{'id': 'p'}, {'id': 'q'}],
                'edges': [{'id': 'e1', 'ends': ['p', 'q'], 'length': '1'},
                          {'id': 'e2', 'ends': ['q', 'p'], 'length': '1'}],
            },
            'generators': [{'vertex_map': {'p': 'p', 'q': 'q'}, 'edge_map': edge_map}],
        }

    def test_valid_group(self):
        serializer = GroupSerializer(data=self.document({
            'e1': {'to': 'e2', 'reversed': True}, 'e2': {'to': 'e1', 'reversed': True},
        }))
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data.order, 2)
        self.assertEqual(GroupSerializer(serializer.validated_data).data['generators'][0]['edge_map']['e1'],
                         {'to': 'e2', 'reversed': True})

    def test_non_isometry(self):
        serializer = GroupSerializer(data=self.document({'e1': {'to': 'e2'}, 'e2': {'to': 'e1'}}))
        self.assertFalse(serializer.is_valid())
        self.assertEqual(serializer.errors['generators'][0].code, 'invalid_isometry')
