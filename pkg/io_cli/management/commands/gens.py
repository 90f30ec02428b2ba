from io_cli.management.base import BundleCommand
from linear_system.enumeration import enumerate_S, enumerate_SK, minimal_generators
from linear_system.serializers import GeneratorSetSerializer
from troplin.exceptions import EmptyLinearSystemError


class Command(BundleCommand):
    help = 'Enumerate a generating set of R(D), or of R(D)^K with --invariant'

    def add_operation_arguments(self, parser):
        parser.add_argument('--invariant', action='store_true', help='Generators of the invariant system R(D)^K')
        parser.add_argument('--minimal', action='store_true', help='Only the extremal invariant generators')

    def run(self, bundle, **options):
        ctx = bundle.context()
        if options['minimal']:
            generators = minimal_generators(ctx)
        elif options['invariant']:
            generators = enumerate_SK(ctx)
        else:
            generators = enumerate_S(ctx)
        if generators.empty_system:
            raise EmptyLinearSystemError('empty linear system')
        return GeneratorSetSerializer(generators, context={'ctx': ctx}).data
