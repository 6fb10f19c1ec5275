"""
Report emitters. JSON output is canonical: sorted keys, two-space indent,
trailing newline, so reruns of one scenario produce identical bytes.
"""
import json
from fractions import Fraction

import numpy as np


def _default(value):
    if isinstance(value, Fraction):
        return [value.numerator, value.denominator]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    raise TypeError(f'Cannot encode {type(value).__name__} in a report')


def normalize(report: dict) -> dict:
    """Round-trip through the encoder so reports only hold JSON types."""
    return json.loads(emit_json(report))


def emit_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_default) + '\n'


def _scalar(value) -> str:
    if isinstance(value, float):
        return f'{value:.6g}'
    return json.dumps(value, sort_keys=True, default=_default)


def _lines(data, indent: int = 1):
    pad = '  ' * indent
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict) and value:
            yield f'{pad}{key}:'
            yield from _lines(value, indent + 1)
        elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            yield f'{pad}{key}: {len(value)} entries'
            for entry in value:
                yield f'{pad}  - ' + ', '.join(f'{k}={_scalar(entry[k])}' for k in sorted(entry))
        else:
            yield f'{pad}{key}: {_scalar(value)}'


def emit_text(report: dict) -> str:
    provenance = report['provenance']
    out = [
        f"Scenario: {report['name']}",
        f"{provenance['tool']} {provenance['version']} ({provenance['scenario_hash'][:12]})",
    ]
    for name, data in report['analyses'].items():
        out.append('')
        out.append(f'[{name}]')
        out.extend(_lines(data))
    out.append('')
    if report['failures']:
        out.append(f"Failures ({len(report['failures'])}):")
        out.extend(f"  {f['analysis']}: {f['code']}: {f['detail']}" for f in report['failures'])
    else:
        out.append('No failures.')
    return '\n'.join(out) + '\n'
