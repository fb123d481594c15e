from shifts.management.base import ShiftCommand


class Command(ShiftCommand):
    help = 'Hausdorff distance between two languages at one length'

    command = 'langdist'

    def add_command_arguments(self, parser):
        parser.add_argument('graphs', nargs=2, help='Two graph files')
        parser.add_argument('--mode', choices=['exact', 'sampled'], default='exact')
        parser.add_argument('--samples', type=int, default=200)
