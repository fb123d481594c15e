from shifts.constructions.coded import MODES
from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Coded systems B_1, B_2, ...: statistics, samples, shadows and connecting words'

    command = 'coded'
    actions = ('stats', 'min-t', 'sample', 'shadow', 'connect', 'witness')

    def add_command_arguments(self, parser):
        parser.add_argument('--b1', nargs='+', help='Words of B_1 (default 0 11)')
        parser.add_argument('--t', help='Comma-separated t(1),t(2),...')
        parser.add_argument('--epsilon', help='Target epsilon; selects missing t(n) by --mode')
        parser.add_argument('--mode', choices=sorted(MODES), help='Inequalities used to select t(n)')
        parser.add_argument('--depth', type=int, help='Deepest level reported (stats)')
        parser.add_argument('--n', type=int, help='Level')
        parser.add_argument('--count', type=int, help='Number of sampled words (sample)')
        parser.add_argument('--length', type=int, help='Exact length of the sampled word (sample)')
        parser.add_argument('--blocks', type=int, help='Length of the block stream (shadow)')
        parser.add_argument('--u', help='Left word (connect) or the word searched for (witness)')
        parser.add_argument('--v', help='Right word (connect)')
        parser.add_argument('--m', type=int, help='Connecting length (connect)')
        parser.add_argument('--m-range', nargs=2, type=int, metavar=('LOW', 'HIGH'),
                            help='Connect every length in LOW..HIGH')
        parser.add_argument('--samples', type=int, help='Samples when B_{n+2} is not enumerable (witness)')
