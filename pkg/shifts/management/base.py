from django.core.management.base import BaseCommand, CommandError

from shifts.forms import FORMAT_CHOICES
from shifts.verifiers import verifier_manager


class ShiftCommand(BaseCommand):
    """
    Base for every verb: adds the global run flags, hands the options to the
    verifier manager and writes the report to stdout (or ``--output``).

    Subclasses set ``command`` and ``actions`` and add their own flags in
    :meth:`add_command_arguments`.
    """

    command = None
    actions = ()

    def add_arguments(self, parser):
        if self.actions:
            parser.add_argument('action', choices=self.actions)
        parser.add_argument('--max-words', type=int, help='Cap on enumerated words')
        parser.add_argument('--max-vertices', type=int, help='Cap on graph and product vertices')
        parser.add_argument('--max-prefix', type=int, help='Cap on generated prefix length')
        parser.add_argument('--seed', type=int, help='Seed for every random choice (default: SHIFTS_DEFAULT_SEED)')
        parser.add_argument('--horizon', type=int, help='Word length, level or truncation horizon')
        parser.add_argument('--format', choices=[value for value, _ in FORMAT_CHOICES], default='json')
        parser.add_argument('--output', help='Write the report to this path instead of stdout')
        parser.add_argument('--no-record', action='store_true', help='Do not store the run in the database')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def add_graph_arguments(self, parser):
        parser.add_argument('--graph', help='Labeled graph as JSON or DOT')
        parser.add_argument('--forbidden', nargs='+', help='Forbidden words of a shift of finite type')
        parser.add_argument('--alphabet-size', type=int, default=2)

    def handle(self, *args, **options):
        action = options.pop('action', '') if self.actions else ''
        record = not options.get('no_record')
        report, exit_code = verifier_manager.run(self.command, action, options, record=record)

        text = report.render(options.get('format') or 'json')
        if options.get('output'):
            try:
                with open(options['output'], 'w', encoding='utf-8') as f:
                    f.write(text)
            except OSError as e:
                raise CommandError(f"Cannot write report: {e.strerror}", returncode=2)
        else:
            self.stdout.write(text, ending='')

        if exit_code:
            failed = report.failed_checks
            message = report.error or f"{len(failed)} check(s) failed, first: {failed[0].name}"
            raise CommandError(message, returncode=exit_code)
