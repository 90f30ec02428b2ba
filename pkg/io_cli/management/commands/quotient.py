from group_action.group import close_group
from io_cli.management.base import BundleCommand
from quotient_morphism.construction import build_quotient
from quotient_morphism.serializers import QuotientSerializer


class Command(BundleCommand):
    help = 'Build the quotient curve and the quotient morphism of a group action'

    def run(self, bundle, **options):
        group = bundle.group or close_group(bundle.curve)
        return QuotientSerializer(build_quotient(group)).data
