from io_cli.management.base import BundleCommand
from linear_system.enumeration import enumerate_SK
from linear_system.expression import express
from linear_system.serializers import CombinationSerializer, GeneratorSetSerializer


class Command(BundleCommand):
    help = 'Write an invariant member of R(D) as a tropical combination of the invariant generators'

    def run(self, bundle, **options):
        ctx = bundle.context()
        generators = enumerate_SK(ctx)
        combination = express(ctx, bundle.single_function(), generators)
        return {
            'generators': GeneratorSetSerializer(generators, context={'ctx': ctx}).data,
            'combination': CombinationSerializer(combination).data,
        }
