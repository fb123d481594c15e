from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Proximal family: level graphs, intersections and zeroing shadows'

    command = 'proximal'
    actions = ('build', 'intersect', 'shadow')

    def add_command_arguments(self, parser):
        parser.add_argument('--n', type=int, default=1, help='Level')
        parser.add_argument('--base', type=int, default=10)
        parser.add_argument('--gaps', help='Comma-separated g(1),g(2),... (default 2^n)')
        parser.add_argument('--len', dest='length', type=int, help='Length of each sampled point (shadow)')
        parser.add_argument('--offset', type=int, default=0, help='Window alignment offset (shadow)')
        parser.add_argument('--points', type=int, default=1, help='Number of sampled points (shadow)')
