"""
rigidkit run <scenario.json> [--analysis roots,detect] [--format json|text] [--out report.json] [--save]
rigidkit validate <scenario.json>

Exit status: 0 when every analysis passes, 1 when any analysis reports a
failure, 2 when the scenario cannot be read or parsed.
"""
import logging
import sys
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import ScenarioParseError
from apps.scenarios.models import ScenarioRun
from apps.scenarios.reports import emit_json, emit_text, normalize
from apps.scenarios.runner import (
    EXIT_OK,
    EXIT_PARSE_ERROR,
    load_scenario,
    parse_scenario,
    run_scenario,
    scenario_hash,
)
from apps.scenarios.serializers import ANALYSES

logger = logging.getLogger(__name__)


def _analysis_list(value: str) -> list[str]:
    names = [name.strip() for name in value.split(',') if name.strip()]
    unknown = sorted(set(names) - set(ANALYSES))
    if unknown:
        raise CommandError(f"Unknown analyses: {', '.join(unknown)}", returncode=EXIT_PARSE_ERROR)
    return names


class Command(BaseCommand):
    help = 'Run or validate a rigidkit scenario file.'

    def add_arguments(self, parser):
        sub = parser.add_subparsers(dest='subcommand', required=True)

        run = sub.add_parser('run', help='Run the analyses of a scenario')
        run.add_argument('path')
        run.add_argument('--analysis', type=_analysis_list, default=None,
                         help=f"Comma separated subset of: {', '.join(ANALYSES)}")
        run.add_argument('--format', choices=['json', 'text'], default='json')
        run.add_argument('--out', default=None, help='Write the report here instead of stdout')
        run.add_argument('--save', action='store_true', help='Store the run in the database')

        validate = sub.add_parser('validate', help='Check a scenario against the schema')
        validate.add_argument('path')

    def handle(self, *args, **options):
        try:
            raw = load_scenario(options['path'])
            if options['subcommand'] == 'validate':
                data = parse_scenario(raw)
                self.stdout.write(self.style.SUCCESS(
                    f"{data['name']}: valid ({', '.join(data['analyses']) or 'no analyses'})"
                ))
                return
            outcome = run_scenario(raw, options['analysis'])
        except ScenarioParseError as exc:
            self.stderr.write(f'{exc.code}: {exc.detail}')
            sys.exit(EXIT_PARSE_ERROR)

        report = normalize(outcome.report)
        rendered = emit_text(report) if options['format'] == 'text' else emit_json(report)
        if options['out']:
            Path(options['out']).write_text(rendered)
            logger.info('Report written to %s', options['out'])
        else:
            self.stdout.write(rendered, ending='')

        if options['save']:
            ScenarioRun.objects.create(
                name=report['name'],
                scenario=raw,
                scenario_hash=scenario_hash(raw),
                analyses=list(report['analyses']),
                report=report,
                exit_code=outcome.exit_code,
                failure_count=len(outcome.failures),
            )

        for failure in outcome.failures:
            self.stderr.write(f"{failure['analysis']}: {failure['code']}: {failure['detail']}")
        if outcome.exit_code != EXIT_OK:
            sys.exit(outcome.exit_code)
