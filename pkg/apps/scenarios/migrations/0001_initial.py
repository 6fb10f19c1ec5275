# Generated by Django 4.2.27 on 2026-10-17 09:12

from django.db import migrations, models
import uuid


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ScenarioRun',
            fields=[
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('name', models.CharField(max_length=255)),
                ('scenario', models.JSONField()),
                ('scenario_hash', models.CharField(db_index=True, max_length=64)),
                ('analyses', models.JSONField(default=list)),
                ('report', models.JSONField()),
                ('exit_code', models.PositiveSmallIntegerField(default=0)),
                ('failure_count', models.PositiveIntegerField(default=0)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'db_table': 'scenario_runs',
                'ordering': ['-created_at'],
            },
        ),
    ]
