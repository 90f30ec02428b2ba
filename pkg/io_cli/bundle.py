"""
Problem Bundles
Loading the JSON documents of one problem and validating them together
"""

import json
import logging
from dataclasses import dataclass

from rest_framework.settings import api_settings

from divisors_functions.divisor import Divisor
from divisors_functions.serializers import DivisorSerializer, FunctionSerializer
from group_action.serializers import GroupSerializer
from linear_system.context import make_context
from metric_graph.serializers import CurveSerializer
from troplin.exceptions import TroplinError

logger = logging.getLogger(__name__)


class BundleError(TroplinError):
    """All validation errors of a bundle, each a {"path", "code", "message"} record."""
    code = 'invalid_input'

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__(f'{len(self.errors)} validation error(s)')


def flatten_errors(detail, path='$'):
    """DRF error structures as flat records; path is a JSON path inside the document."""
    if isinstance(detail, dict):
        for key, value in detail.items():
            yield from flatten_errors(value, path if key == api_settings.NON_FIELD_ERRORS_KEY else f'{path}.{key}')
    elif isinstance(detail, list):
        for index, value in enumerate(detail):
            yield from flatten_errors(value, f'{path}[{index}]' if isinstance(value, (dict, list)) else path)
    else:
        yield {'path': path, 'code': getattr(detail, 'code', 'invalid'), 'message': str(detail)}


@dataclass(frozen=True)
class ProblemBundle:
    curve: object
    divisor: object = None
    group: object = None
    functions: tuple = ()
    target: object = None

    def context(self):
        divisor = self.divisor if self.divisor is not None else Divisor.zero(self.curve)
        return make_context(divisor, self.group)

    def single_function(self):
        if len(self.functions) != 1:
            raise BundleError([{
                'path': '--function', 'code': 'missing_function',
                'message': f'exactly one function document is needed, got {len(self.functions)}',
            }])
        return self.functions[0]

    def required_divisor(self):
        if self.divisor is None:
            raise BundleError([{'path': '--divisor', 'code': 'missing_divisor', 'message': 'a divisor document is needed'}])
        return self.divisor


class _Loader:

    def __init__(self):
        self.errors = []

    def load(self, path):
        try:
            with open(path, encoding='utf-8') as handle:
                return json.load(handle)
        except OSError as exc:
            self.errors.append({'path': path, 'code': 'missing_file', 'message': str(exc)})
        except json.JSONDecodeError as exc:
            self.errors.append({'path': path, 'code': 'malformed_json', 'message': str(exc)})
        return None

    def parse(self, path, serializer_class, context=None):
        data = self.load(path)
        if data is None:
            return None
        serializer = serializer_class(data=data, context=context or {})
        if serializer.is_valid():
            return serializer.validated_data
        for record in flatten_errors(serializer.errors):
            self.errors.append({**record, 'path': f'{path}:{record["path"]}'})
        return None


def parse_bundle(curve=None, divisor=None, group=None, functions=(), target=None):
    """
    Validate every given document. The curve may be omitted when a group
    document supplies it; all errors are raised together as a BundleError.
    """
    loader = _Loader()
    model = None
    if curve:
        parsed = loader.parse(curve, CurveSerializer)
        model = parsed['model'] if parsed else None
    action = None
    if group:
        action = loader.parse(group, GroupSerializer)
        if action is not None and model is not None and action.model != model:
            loader.errors.append({
                'path': f'{group}:$.model', 'code': 'model_mismatch',
                'message': 'the group acts on another curve than the curve document',
            })
            action = None
        elif action is not None and model is None and not curve:
            model = action.model
    if model is None:
        if not loader.errors:
            loader.errors.append({'path': '--curve', 'code': 'missing_curve', 'message': 'a curve or group document is needed'})
        raise BundleError(loader.errors)

    context = {'model': model}
    parsed_divisor = loader.parse(divisor, DivisorSerializer, context) if divisor else None
    parsed_target = loader.parse(target, DivisorSerializer, context) if target else None
    parsed_functions = tuple(loader.parse(path, FunctionSerializer, context) for path in functions)
    if loader.errors:
        raise BundleError(loader.errors)
    logger.debug('bundle parsed: %d vertices, %d functions', len(model.vertices), len(parsed_functions))
    return ProblemBundle(model, parsed_divisor, action, parsed_functions, parsed_target)
