"""
Bundle Commands
Shared argument handling, error mapping and JSON output of the problem commands
"""

import json
import logging

from django.core.management.base import BaseCommand, CommandError

from troplin.exceptions import MembershipError, TroplinError
from io_cli.bundle import BundleError, parse_bundle

logger = logging.getLogger(__name__)

EXIT_INVALID_INPUT = 2
EXIT_MEMBERSHIP = 3


class BundleCommand(BaseCommand):
    """
    Reads the problem documents named on the command line, runs one operation
    and prints its answer as JSON. Input errors exit with 2, membership
    violations and empty linear systems with 3.
    """

    def add_arguments(self, parser):
        parser.add_argument('--curve', help='Curve document')
        parser.add_argument('--divisor', help='Divisor document on the curve')
        parser.add_argument('--group', help='Group document; may replace --curve')
        parser.add_argument('--function', action='append', default=[], help='Function document (repeatable)')
        parser.add_argument('--pretty', action='store_true', help='Indent the JSON output')
        self.add_operation_arguments(parser)

    def add_operation_arguments(self, parser):
        pass

    def run(self, bundle, **options):
        raise NotImplementedError('subclasses of BundleCommand must provide a run() method')

    def emit(self, payload, options, stream=None):
        stream = stream or self.stdout
        stream.write(json.dumps(payload, sort_keys=True, indent=2 if options.get('pretty') else None))

    def handle(self, *args, **options):
        try:
            bundle = parse_bundle(
                curve=options['curve'],
                divisor=options['divisor'],
                group=options['group'],
                functions=options['function'],
                target=options.get('target'),
            )
            payload = self.run(bundle, **options)
        except BundleError as exc:
            logger.warning('%s: %s', self.name, exc)
            self.emit({'errors': exc.errors}, options, self.stderr)
            raise CommandError(str(exc), returncode=EXIT_INVALID_INPUT)
        except MembershipError as exc:
            logger.warning('%s: %s', self.name, exc)
            self.emit({'error': {'code': exc.code, 'message': str(exc)}}, options, self.stderr)
            raise CommandError(str(exc), returncode=EXIT_MEMBERSHIP)
        except TroplinError as exc:
            logger.error('%s failed: %s', self.name, exc)
            self.emit({'error': {'code': exc.code, 'message': str(exc)}}, options, self.stderr)
            raise CommandError(str(exc), returncode=EXIT_INVALID_INPUT)
        self.emit(payload, options)
        logger.info('%s finished', self.name)

    @property
    def name(self):
        return self.__module__.rsplit('.', 1)[-1]
