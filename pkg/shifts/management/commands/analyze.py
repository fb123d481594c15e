from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Flags and entropy bounds of a presented shift'

    command = 'analyze'

    def add_command_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument('--cycle-length', type=int,
                            help='Longest closed walk used for the entropy lower bound')
