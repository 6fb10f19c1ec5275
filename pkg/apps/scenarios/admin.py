from django.contrib import admin
from .models import ScenarioRun


@admin.register(ScenarioRun)
class ScenarioRunAdmin(admin.ModelAdmin):
    list_display = ['name', 'scenario_hash', 'exit_code', 'failure_count', 'created_at']
    list_filter = ['exit_code']
    search_fields = ['name', 'scenario_hash']
    readonly_fields = ['scenario_hash', 'report', 'created_at', 'updated_at']
