from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Markov approximations: build one order or probe orders 1..horizon'

    command = 'rauzy'
    actions = ('build', 'probe')

    def add_command_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument('--words', nargs='+',
                            help='Use the factors of these words as the language')
