from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Transport distances between periodic-orbit measures'

    command = 'transport'
    actions = ('dbar', 'dstar', 'alpha', 'cycles', 'block')

    def add_command_arguments(self, parser):
        parser.add_argument('--mu', help="Periodic orbit, written 'period' or 'preperiod|period'")
        parser.add_argument('--nu', help='Second periodic orbit')
        parser.add_argument('--alpha', help='Tolerance as a rational (alpha)')
        parser.add_argument('--graphs', nargs=2, help='Two graphs whose cycle measures are compared (cycles)')
        parser.add_argument('--max-len', type=int, help='Longest cycle enumerated (cycles)')
        parser.add_argument('--block', help='Finite block compared with --mu (block)')
