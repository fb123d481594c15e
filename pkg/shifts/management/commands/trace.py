from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Tracing costs and projection to the measure center'

    command = 'trace'
    actions = ('best', 'probe', 'project')

    def add_command_arguments(self, parser):
        self.add_graph_arguments(parser)
        parser.add_argument('--word', help='Target word (best)')
        parser.add_argument('--segments', nargs='+', help='Segments to concatenate (probe)')
        parser.add_argument('--words', nargs='+', help='Words to project (project)')
        parser.add_argument('--block', type=int, help='Block length of the projection')
