from io_cli.management.base import BundleCommand
from linear_system.membership import in_R, in_RK, in_S, in_SK, is_extremal_invariant
from linear_system.serializers import MembershipSerializer

TESTS = {
    'r': in_R,
    'rk': in_RK,
    's': in_S,
    'sk': in_SK,
    'extremal': is_extremal_invariant,
}


class Command(BundleCommand):
    help = 'Test a function for membership in R(D), R(D)^K, S(D), S(D)_K or the extremals'

    def add_operation_arguments(self, parser):
        parser.add_argument('--in', dest='test', choices=sorted(TESTS), default='r', help='Set to test against')

    def run(self, bundle, **options):
        ctx = bundle.context()
        member = TESTS[options['test']](ctx, bundle.single_function())
        return MembershipSerializer({'test': options['test'], 'member': member}).data
