from divisors_functions.chip_firing import decompose_chip_firing
from divisors_functions.serializers import DecompositionSerializer
from io_cli.management.base import BundleCommand


class Command(BundleCommand):
    help = 'Decompose a rational function into chip-firing moves'

    def run(self, bundle, **options):
        return DecompositionSerializer(decompose_chip_firing(bundle.single_function())).data
