from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Generate Oxtoby prefixes and verify their counting bounds'

    command = 'oxtoby'
    actions = ('gen', 'verify')

    def add_command_arguments(self, parser):
        parser.add_argument('--scale', help='Comma-separated scale p_0,p_1,... (p_0 = 1)')
        parser.add_argument('--ratio', type=int, help='Geometric scale ratio when --scale is absent')
        parser.add_argument('--terms', type=int, help='Number of geometric terms')
        parser.add_argument('--length', type=int, help='Prefix length (gen)')
        parser.add_argument('--delta', help='Target delta as a rational (verify)')
        parser.add_argument('--k', type=int, help='Deepest level verified')
