import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from divisors_functions.serializers import DivisorSerializer, FunctionSerializer
from group_action.serializers import GroupSerializer
from group_action.testing import reflection_group
from metric_graph.serializers import CurveSerializer
from metric_graph.testing import segment
from .bundle import BundleError, flatten_errors, parse_bundle
from .cli import run_cli

SAMPLES = Path(__file__).resolve().parent / 'samples'


def sample(name):
    return str(SAMPLES / name)


def codes(error):
    return sorted(record['code'] for record in error.errors)


class ParseBundleTests(SimpleTestCase):

    def test_curve_and_divisor(self):
        bundle = parse_bundle(curve=sample('segment.json'), divisor=sample('segment_divisor.json'))
        self.assertEqual(bundle.curve, segment())
        self.assertEqual(bundle.divisor.degree, 1)
        self.assertIsNone(bundle.group)

    def test_group_supplies_the_curve(self):
        bundle = parse_bundle(group=sample('reflection.json'), divisor=sample('circle_divisor.json'))
        self.assertEqual(bundle.group.order, reflection_group().order)
        self.assertEqual(bundle.curve, reflection_group().model)
        self.assertEqual(bundle.context().degree, 2)

    def test_all_errors_are_reported(self):
        with self.assertRaises(BundleError) as caught:
            parse_bundle(curve=sample('bad_curve.json'))
        self.assertEqual(codes(caught.exception), ['malformed_rational', 'nonpositive_length'])
        paths = sorted(record['path'] for record in caught.exception.errors)
        self.assertTrue(paths[0].endswith(':$.edges[0].length'))
        self.assertTrue(paths[1].endswith(':$.edges[1].length'))

    def test_dangling_id(self):
        with self.assertRaises(BundleError) as caught:
            parse_bundle(curve=sample('dangling_curve.json'))
        self.assertEqual(codes(caught.exception), ['dangling_id'])

    def test_unreadable_files(self):
        with self.assertRaises(BundleError) as caught:
            parse_bundle(curve=sample('malformed.json'))
        self.assertEqual(codes(caught.exception), ['malformed_json'])
        with self.assertRaises(BundleError) as caught:
            parse_bundle(curve=sample('no_such_file.json'))
        self.assertEqual(codes(caught.exception), ['missing_file'])

    def test_group_on_another_curve(self):
        with self.assertRaises(BundleError) as caught:
            parse_bundle(curve=sample('segment.json'), group=sample('reflection.json'))
        self.assertEqual(codes(caught.exception), ['model_mismatch'])

    def test_a_curve_is_required(self):
        with self.assertRaises(BundleError) as caught:
            parse_bundle(divisor=sample('segment_divisor.json'))
        self.assertEqual(codes(caught.exception), ['missing_curve'])

    def test_flatten_errors(self):
        detail = {'edges': [{}, {'length': ['bad']}], 'non_field_errors': ['worse']}
        self.assertEqual(
            [record['path'] for record in flatten_errors(detail)],
            ['$.edges[1].length', '$'],
        )


def canonical(data):
    return json.dumps(data, sort_keys=True)


def validated(serializer_class, data, **context):
    serializer = serializer_class(data=data, context=context)
    serializer.is_valid(raise_exception=True)
    return serializer.validated_data


class RoundTripTests(SimpleTestCase):
    """A parsed sample written back out parses to the same document, byte for byte."""

    def read(self, name):
        return json.loads((SAMPLES / name).read_text(encoding='utf-8'))

    def model(self, name):
        return validated(CurveSerializer, self.read(name))['model']

    def assertStable(self, serializer_class, parsed, reparse):
        text = canonical(serializer_class(parsed).data)
        self.assertEqual(canonical(serializer_class(reparse(json.loads(text))).data), text)

    def test_curves(self):
        for name in ('segment.json', 'circle.json'):
            with self.subTest(name=name):
                self.assertStable(
                    CurveSerializer, self.model(name),
                    lambda data: validated(CurveSerializer, data)['model'],
                )

    def test_divisors(self):
        cases = [
            ('circle.json', 'circle_divisor.json'), ('segment.json', 'segment_divisor.json'),
            ('segment.json', 'segment_target.json'), ('segment.json', 'segment_negative.json'),
        ]
        for curve, name in cases:
            model = self.model(curve)
            with self.subTest(name=name):
                self.assertStable(
                    DivisorSerializer, validated(DivisorSerializer, self.read(name), model=model),
                    lambda data: validated(DivisorSerializer, data, model=model),
                )

    def test_functions(self):
        cases = [
            ('circle.json', 'circle_zero.json'), ('segment.json', 'segment_descending.json'),
            ('segment.json', 'segment_steep.json'),
        ]
        for curve, name in cases:
            model = self.model(curve)
            with self.subTest(name=name):
                self.assertStable(
                    FunctionSerializer, validated(FunctionSerializer, self.read(name), model=model),
                    lambda data: validated(FunctionSerializer, data, model=model),
                )

    def test_group(self):
        self.assertStable(
            GroupSerializer, validated(GroupSerializer, self.read('reflection.json')),
            lambda data: validated(GroupSerializer, data),
        )

    def test_bundle(self):
        first = parse_bundle(
            group=sample('reflection.json'), divisor=sample('circle_divisor.json'),
            functions=[sample('circle_zero.json')],
        )
        model = first.curve
        documents = {
            'group.json': canonical(GroupSerializer(first.group).data),
            'divisor.json': canonical(DivisorSerializer(first.divisor).data),
            'function.json': canonical(FunctionSerializer(first.functions[0], context={'model': model}).data),
        }
        with tempfile.TemporaryDirectory() as folder:
            root = Path(folder)
            for name, text in documents.items():
                (root / name).write_text(text, encoding='utf-8')
            second = parse_bundle(
                group=str(root / 'group.json'), divisor=str(root / 'divisor.json'),
                functions=[str(root / 'function.json')],
            )
        self.assertEqual(canonical(GroupSerializer(second.group).data), documents['group.json'])
        self.assertEqual(canonical(DivisorSerializer(second.divisor).data), documents['divisor.json'])
        self.assertEqual(canonical(FunctionSerializer(second.functions[0]).data), documents['function.json'])
        self.assertEqual(second.divisor, first.divisor)


class CommandLineTests(SimpleTestCase):

    def run_cli(self, *argv):
        stdout, stderr = StringIO(), StringIO()
        code = run_cli(list(argv), stdout=stdout, stderr=stderr)
        return code, stdout.getvalue(), stderr.getvalue()

    def test_generators_of_a_segment(self):
        code, out, _ = self.run_cli('gens', '--curve', sample('segment.json'), '--divisor', sample('segment_divisor.json'))
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(len(payload['generators']), 2)
        self.assertFalse(payload['empty_system'])

    def test_output_is_deterministic(self):
        argv = ('gens', '--invariant', '--group', sample('reflection.json'), '--divisor', sample('circle_divisor.json'))
        self.assertEqual(self.run_cli(*argv), self.run_cli(*argv))

    def test_invariant_generators(self):
        code, out, _ = self.run_cli(
            'gens', '--invariant', '--group', sample('reflection.json'), '--divisor', sample('circle_divisor.json'),
        )
        self.assertEqual(code, 0)
        self.assertEqual(len(json.loads(out)['generators']), 1)

    def test_empty_linear_system(self):
        code, out, err = self.run_cli(
            'gens', '--curve', sample('segment.json'), '--divisor', sample('segment_negative.json'),
        )
        self.assertEqual(code, 3)
        self.assertEqual(out, '')
        self.assertEqual(json.loads(err)['error']['message'], 'empty linear system')

    def test_check(self):
        code, out, _ = self.run_cli(
            'check', '--in', 'sk', '--group', sample('reflection.json'),
            '--divisor', sample('circle_divisor.json'), '--function', sample('circle_zero.json'),
        )
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out), {'member': True, 'test': 'sk'})

    def test_check_outside_the_linear_system(self):
        code, _, err = self.run_cli(
            'check', '--in', 's', '--curve', sample('segment.json'),
            '--divisor', sample('segment_divisor.json'), '--function', sample('segment_steep.json'),
        )
        self.assertEqual(code, 3)
        self.assertEqual(json.loads(err)['error']['code'], 'membership_precondition')

    def test_check_needs_a_function(self):
        code, _, err = self.run_cli('check', '--curve', sample('segment.json'))
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(err)['errors'][0]['code'], 'missing_function')

    def test_express(self):
        code, out, _ = self.run_cli(
            'express', '--group', sample('reflection.json'),
            '--divisor', sample('circle_divisor.json'), '--function', sample('circle_zero.json'),
        )
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)['combination'], {'terms': [{'generator': 0, 'coefficient': '0'}]})

    def test_decompose(self):
        code, out, _ = self.run_cli('decompose', '--curve', sample('segment.json'), '--function', sample('segment_descending.json'))
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(set(payload), {'constant', 'moves'})
        self.assertTrue(payload['moves'])

    def test_quotient(self):
        code, out, _ = self.run_cli('quotient', '--group', sample('reflection.json'), '--pretty')
        self.assertEqual(code, 0)
        self.assertIn('\n  "degree": 2', out)
        payload = json.loads(out)
        self.assertEqual([e['length'] for e in payload['quotient']['edges']], ['1'])

    def test_info(self):
        code, out, _ = self.run_cli('info', '--group', sample('reflection.json'))
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload['curve']['genus'], 1)
        self.assertEqual(payload['group']['order'], 2)
        self.assertEqual(payload['group']['V1'], [{'vertex': 'p'}, {'vertex': 'q'}])

    def test_equivalent(self):
        code, out, _ = self.run_cli(
            'equivalent', '--curve', sample('segment.json'),
            '--divisor', sample('segment_divisor.json'), '--target', sample('segment_target.json'),
        )
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)['equivalent'])

    def test_invalid_input(self):
        code, out, err = self.run_cli('gens', '--curve', sample('bad_curve.json'))
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertEqual(len(json.loads(err)['errors']), 2)

    def test_unknown_command(self):
        code, _, err = self.run_cli('solve')
        self.assertEqual(code, 2)
        self.assertIn('usage: troplin', err)

    def test_unknown_option(self):
        code, _, _ = self.run_cli('gens', '--curve', sample('segment.json'), '--bogus')
        self.assertEqual(code, 2)


class ManagementCommandTests(SimpleTestCase):

    def test_call_command(self):
        out = StringIO()
        call_command('quotient', group=sample('reflection.json'), stdout=out)
        self.assertEqual(json.loads(out.getvalue())['degree'], 2)

    def test_membership_error_exit_code(self):
        with self.assertRaises(CommandError) as caught:
            call_command(
                'membership', '--in', 's', curve=sample('segment.json'),
                divisor=sample('segment_divisor.json'), function=[sample('segment_steep.json')],
                stdout=StringIO(), stderr=StringIO(),
            )
        self.assertEqual(caught.exception.returncode, 3)
