import uuid
from django.db import models


class ScenarioRun(models.Model):
    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    name = models.CharField(max_length=255)
    scenario = models.JSONField()
    scenario_hash = models.CharField(max_length=64, db_index=True)
    analyses = models.JSONField(default=list)
    report = models.JSONField()
    exit_code = models.PositiveSmallIntegerField(default=0)
    failure_count = models.PositiveIntegerField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    class Meta:
        db_table = 'scenario_runs'
        ordering = ['-created_at']

    def __str__(self):
        return f'{self.name} ({self.scenario_hash[:12]})'

    @property
    def succeeded(self):
        return self.exit_code == 0
