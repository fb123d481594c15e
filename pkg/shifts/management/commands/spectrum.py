from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Maximal occurrence counts and frequencies, and the measure center'

    command = 'spectrum'
    actions = ('lambda', 'gamma', 'center')

    def add_command_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument('--word', help='Word whose occurrences are counted')
