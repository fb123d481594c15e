from datetime import timedelta

from django.conf import settings
from django.core.management.base import BaseCommand
from django.utils import timezone

from shifts.models import VerificationRun


class Command(BaseCommand):
    """Management command to delete old run records"""

    help = 'Delete recorded verification runs older than the retention period'

    def add_arguments(self, parser):
        parser.add_argument(
            '--days',
            type=int,
            default=getattr(settings, 'SHIFTS_RUN_RETENTION_DAYS', 30),
            help='Number of days to retain runs (default: SHIFTS_RUN_RETENTION_DAYS)'
        )
        parser.add_argument(
            '--dry-run',
            action='store_true',
            help='Show what would be deleted without actually deleting'
        )

    def handle(self, *args, **options):
        days = options['days']
        cutoff_date = timezone.now() - timedelta(days=days)
        old_runs = VerificationRun.objects.filter(created_at__lt=cutoff_date)
        count = old_runs.count()

        if count == 0:
            self.stdout.write(self.style.SUCCESS('No old runs found.'))
            return

        if options['dry_run']:
            self.stdout.write(
                self.style.WARNING(f'DRY RUN: Would delete {count} run(s) older than {days} day(s).')
            )
            for run in old_runs[:10]:
                self.stdout.write(f'  - Run {run.id}: {run}')
            if count > 10:
                self.stdout.write(f'  ... and {count - 10} more')
            return

        deleted, _ = old_runs.delete()
        self.stdout.write(self.style.SUCCESS(f'Successfully deleted {deleted} old run(s).'))
