from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Couple two or more presentations and report the flags of the product'

    command = 'couple'

    def add_command_arguments(self, parser):
        parser.add_argument('graphs', nargs='+', help='Graph files (JSON or DOT)')
