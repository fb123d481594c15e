from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('analyze', 'Analyze'), ('couple', 'Couple'), ('rauzy', 'Rauzy graph'), ('trace', 'Trace'), ('langdist', 'Language distance'), ('transport', 'Transport'), ('spectrum', 'Spectrum'), ('oxtoby', 'Oxtoby'), ('tower', 'Tower'), ('proximal', 'Proximal'), ('coded', 'Coded')], max_length=20)),
                ('action', models.CharField(blank=True, max_length=20)),
                ('config', models.JSONField(default=dict, help_text='Echo of the run configuration')),
                ('seed', models.BigIntegerField(blank=True, null=True)),
                ('status', models.CharField(choices=[('pending', 'Pending'), ('running', 'Running'), ('passed', 'Passed'), ('violated', 'Bound violated'), ('failed', 'Failed')], default='pending', max_length=20)),
                ('exit_code', models.PositiveSmallIntegerField(blank=True, null=True)),
                ('report', models.JSONField(blank=True, null=True)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('processing_time', models.FloatField(blank=True, help_text='Processing time in seconds', null=True)),
                ('error_message', models.TextField(blank=True)),
            ],
            options={
                'verbose_name': 'Verification Run',
                'verbose_name_plural': 'Verification Runs',
                'ordering': ['-created_at'],
            },
        ),
    ]
