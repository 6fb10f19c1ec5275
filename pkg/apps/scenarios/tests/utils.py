import json
from pathlib import Path

SCENARIOS = Path(__file__).resolve().parent.parent / 'scenarios'
GOLDEN = Path(__file__).resolve().parent.parent / 'golden'

SL3_DIAGONAL = [[1, 0, 0], [0, 0, 0], [0, 0, -1]]
SL3_E12 = [[0, 1, 0], [0, 0, 0], [0, 0, 0]]


def shipped(name: str) -> Path:
    return SCENARIOS / f'{name}.json'


def golden(name: str) -> dict:
    return json.loads((GOLDEN / f'{name}.json').read_text())


def lookup(report: dict, path: str):
    value = report
    for part in path.split('/'):
        value = value[part]
    return value


def sl3_scenario(generators, analyses=('roots',)) -> dict:
    return {
        'name': 'sl3-test',
        'algebra': {'kind': 'sl', 'n': 3},
        'abelian': {'generators': generators},
        'analyses': list(analyses),
    }
