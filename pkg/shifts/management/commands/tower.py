from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Build the periodic tower V_0, V_1, ... and verify its exact bounds'

    command = 'tower'
    actions = ('build', 'verify')

    def add_command_arguments(self, parser):
        parser.add_argument('--depth', type=int, default=3)
        parser.add_argument('--ratio', default='1/4', help='delta_k = ratio^k')
