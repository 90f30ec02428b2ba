from group_action.group import compute_V1
from group_action.invariant import orbit_data
from group_action.serializers import OrbitDataSerializer, points_representation
from io_cli.management.base import BundleCommand
from quotient_morphism.construction import build_quotient
from quotient_morphism.serializers import QuotientSerializer


class Command(BundleCommand):
    help = 'Describe a curve and, when given, its group action'

    def run(self, bundle, **options):
        model = bundle.curve
        payload = {
            'curve': {
                **model.describe(),
                'valences': {v.id: model.vertex_valence(v.id) for v in model.vertices},
            },
        }
        if bundle.group is not None:
            group = bundle.group
            payload['group'] = {
                'order': group.order,
                'V1': points_representation(compute_V1(group)),
                'orbits': OrbitDataSerializer(orbit_data(group)).data,
            }
            payload['quotient'] = QuotientSerializer(build_quotient(group)).data
        return payload
