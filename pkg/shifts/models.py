from django.db import models


class VerificationRun(models.Model):
    """One command-line run and the report it produced"""

    COMMAND_CHOICES = [
        ('analyze', 'Analyze'),
        ('couple', 'Couple'),
        ('rauzy', 'Rauzy graph'),
        ('trace', 'Trace'),
        ('langdist', 'Language distance'),
        ('transport', 'Transport'),
        ('spectrum', 'Spectrum'),
        ('oxtoby', 'Oxtoby'),
        ('tower', 'Tower'),
        ('proximal', 'Proximal'),
        ('coded', 'Coded'),
    ]

    STATUS_CHOICES = [
        ('pending', 'Pending'),
        ('running', 'Running'),
        ('passed', 'Passed'),
        ('violated', 'Bound violated'),
        ('failed', 'Failed'),
    ]

    command = models.CharField(max_length=20, choices=COMMAND_CHOICES)
    action = models.CharField(max_length=20, blank=True)
    config = models.JSONField(default=dict, help_text="Echo of the run configuration")
    seed = models.BigIntegerField(null=True, blank=True)
    status = models.CharField(max_length=20, choices=STATUS_CHOICES, default='pending')
    exit_code = models.PositiveSmallIntegerField(null=True, blank=True)
    report = models.JSONField(null=True, blank=True)

    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)
    processing_time = models.FloatField(
        null=True,
        blank=True,
        help_text="Processing time in seconds"
    )
    error_message = models.TextField(blank=True)

    class Meta:
        ordering = ['-created_at']
        verbose_name = 'Verification Run'
        verbose_name_plural = 'Verification Runs'

    def __str__(self):
        label = f"{self.command} {self.action}".strip()
        return f"{label} - {self.created_at.strftime('%Y-%m-%d %H:%M')} - {self.status}"

    @property
    def failed_checks(self):
        if not self.report:
            return []
        return [c['name'] for c in self.report.get('checks', []) if not c.get('ok')]
