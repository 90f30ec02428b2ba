from divisors_functions.serializers import FunctionSerializer
from io_cli.bundle import BundleError
from io_cli.management.base import BundleCommand
from linear_system.equivalence import linear_equivalence


class Command(BundleCommand):
    help = 'Decide whether two divisors are linearly equivalent and give the witnessing function'

    def add_operation_arguments(self, parser):
        parser.add_argument('--target', help='Divisor document compared against --divisor')

    def run(self, bundle, **options):
        if bundle.target is None:
            raise BundleError([{'path': '--target', 'code': 'missing_divisor', 'message': 'a target divisor is needed'}])
        f = linear_equivalence(bundle.required_divisor(), bundle.target)
        return {
            'equivalent': f is not None,
            'function': FunctionSerializer(f.normalized()).data if f is not None else None,
        }
