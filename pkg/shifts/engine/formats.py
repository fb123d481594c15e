"""
Text formats: words, ultimately periodic points, graph JSON and DOT.

Words over alphabets of at most ten symbols are digit strings (``"0110"``); larger
alphabets use comma-separated integers. A point ``u·v^∞`` is written ``"u|v"``.
"""

import json
import re
from fractions import Fraction

from .exceptions import ShiftError
from .sofic import LabeledGraph
from .words import Alphabet, UPPoint


class FormatError(ShiftError):
    """Malformed input text; ``position`` is a JSON location or a field path"""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


def format_word(word, alphabet_size=2):
    if alphabet_size <= 10:
        return ''.join(str(s) for s in word)
    return ','.join(str(s) for s in word)


def parse_word(text, alphabet=None):
    text = text.strip()
    if text in ('', 'λ'):
        word = ()
    elif ',' in text or (alphabet is not None and alphabet.size > 10):
        try:
            word = tuple(int(part) for part in text.split(','))
        except ValueError:
            raise FormatError(f"Invalid word {text!r}")
    else:
        if not text.isdigit():
            raise FormatError(f"Invalid word {text!r}")
        word = tuple(int(ch) for ch in text)
    if alphabet is not None:
        alphabet.check(word)
    return word


def format_point(point, alphabet_size=2):
    return f"{format_word(point.preperiod, alphabet_size)}|{format_word(point.period, alphabet_size)}"


def parse_point(text, alphabet=None):
    if '|' not in text:
        raise FormatError(f"Ultimately periodic points are written 'preperiod|period', got {text!r}")
    pre, per = text.split('|', 1)
    return UPPoint(parse_word(pre, alphabet), parse_word(per, alphabet))


def rational(value):
    value = Fraction(value)
    return {'num': value.numerator, 'den': value.denominator}


def parse_rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"Invalid rational {text!r}")


# -- graphs ---------------------------------------------------------------------

def graph_to_dict(g):
    return {
        'alphabet_size': g.alphabet.size,
        'vertices': g.vertex_count,
        'edges': [{'src': s, 'dst': d, 'label': a} for s, d, a in g.edges],
    }


def graph_to_json(g):
    return json.dumps(graph_to_dict(g), sort_keys=True)


def _require_int(data, key, path):
    if key not in data:
        raise FormatError(f"Missing field {key!r}", f"{path}{key}")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"Field {key!r} must be an integer", f"{path}{key}")
    return value


def graph_from_dict(data):
    if not isinstance(data, dict):
        raise FormatError("Graph document must be a JSON object", '$')
    size = _require_int(data, 'alphabet_size', '$.')
    vertices = _require_int(data, 'vertices', '$.')
    raw_edges = data.get('edges')
    if not isinstance(raw_edges, list):
        raise FormatError("Field 'edges' must be a list", '$.edges')
    edges = []
    for i, edge in enumerate(raw_edges):
        path = f'$.edges[{i}].'
        if not isinstance(edge, dict):
            raise FormatError("Edge must be an object", path.rstrip('.'))
        edges.append((_require_int(edge, 'src', path), _require_int(edge, 'dst', path),
                      _require_int(edge, 'label', path)))
    try:
        return LabeledGraph(vertices, tuple(edges), Alphabet(size))
    except ShiftError as e:
        raise FormatError(str(e), '$')


def graph_from_json(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"Malformed graph JSON: {e.msg}", f"line {e.lineno} column {e.colno}")
    return graph_from_dict(data)


def load_graph(path):
    try:
        with open(path, encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise FormatError(f"Cannot read graph file: {e.strerror}", path)
    if path.endswith('.dot') or path.endswith('.gv'):
        return graph_from_dot(text)
    return graph_from_json(text)


def graph_to_dot(g, name='shift'):
    lines = [f'digraph {name} {{', f'  graph [alphabet_size={g.alphabet.size}, vertices={g.vertex_count}];']
    lines.extend(f'  {v};' for v in range(g.vertex_count))
    lines.extend(f'  {s} -> {d} [label="{a}"];' for s, d, a in g.edges)
    lines.append('}')
    return '\n'.join(lines) + '\n'


_DOT_HEADER = re.compile(r'graph\s*\[\s*alphabet_size\s*=\s*(\d+)\s*,\s*vertices\s*=\s*(\d+)\s*\]')
_DOT_EDGE = re.compile(r'(\d+)\s*->\s*(\d+)\s*\[\s*label\s*=\s*"(\d+)"\s*\]')


def graph_from_dot(text):
    """Reads the DOT dialect written by :func:`graph_to_dot`"""
    header = _DOT_HEADER.search(text)
    if not header:
        raise FormatError("DOT graph lacks the 'graph [alphabet_size=.., vertices=..]' attribute line")
    edges = tuple((int(s), int(d), int(a)) for s, d, a in _DOT_EDGE.findall(text))
    try:
        return LabeledGraph(int(header.group(2)), edges, Alphabet(int(header.group(1))))
    except ShiftError as e:
        raise FormatError(str(e))
