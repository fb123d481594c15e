"""
Report documents.

Every run produces one JSON object. Exact rationals are written as ``{"num", "den"}``
pairs and keys are sorted, so identical runs give byte-identical output.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from django.template.loader import render_to_string

from . import __version__
from .constructions.checks import Check
from .engine.formats import graph_to_dot, rational

TOOL = 'shifts'


def encode(value):
    """Turn a result tree into JSON-ready values"""
    if isinstance(value, Fraction):
        return rational(value)
    if isinstance(value, Check):
        return {
            'name': value.name, 'ok': value.ok, 'lhs': encode(value.lhs),
            'relation': value.relation, 'rhs': encode(value.rhs), 'detail': value.detail,
        }
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [encode(v) for v in items]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


@dataclass
class Report:
    command: str
    action: str = ''
    config: dict = field(default_factory=dict)
    caps: dict = field(default_factory=dict)
    seed: int = None
    result: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    status: str = 'ok'
    error: str = ''
    graph: object = None

    @property
    def failed_checks(self):
        return [c for c in self.checks if not c.ok]

    def as_dict(self):
        document = {
            'tool': TOOL,
            'version': __version__,
            'command': self.command,
            'action': self.action,
            'config': encode(self.config),
            'caps': encode(self.caps),
            'seed': self.seed,
            'status': self.status,
            'result': encode(self.result),
            'checks': encode(self.checks),
        }
        if self.error:
            document['error'] = self.error
        return document

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + '\n'

    def to_text(self):
        return render_to_string('shifts/report.txt', {'report': self, 'document': self.as_dict()})

    def to_dot(self):
        if self.graph is None:
            return None
        return graph_to_dot(self.graph, name=self.command)

    def render(self, fmt='json'):
        """``dot`` falls back to JSON for reports without a graph"""
        if fmt == 'dot':
            return self.to_dot() or self.to_json()
        if fmt == 'text':
            return self.to_text()
        return self.to_json()
