import os
import tempfile

from django.test import SimpleTestCase
from hypothesis import given, settings
from hypothesis.extra.django import TestCase

from shifts.engine.formats import (
    FormatError, format_word, graph_from_dot, graph_from_json, graph_to_dot, graph_to_json, load_graph, parse_word,
)
from shifts.engine.sofic import LabeledGraph
from shifts.engine.words import Alphabet

from .oracles import even_shift, small_graphs, words


def wide_graph():
    """Labels up to 11, and a transient vertex 3 that only leads into the cycle"""
    edges = ((0, 1, 10), (1, 2, 11), (2, 0, 3), (3, 0, 7), (0, 0, 0))
    return LabeledGraph(4, edges, Alphabet(12))


class GraphCodecTestCase(SimpleTestCase):
    """Graph files read back as the graph that wrote them"""

    def assertSameGraph(self, g, h):
        self.assertEqual(h.vertex_count, g.vertex_count)
        self.assertEqual(h.alphabet.size, g.alphabet.size)
        self.assertEqual(h.edges, g.edges)

    def test_json_round_trip(self):
        for g in (even_shift(), wide_graph()):
            text = graph_to_json(g)
            h = graph_from_json(text)
            self.assertSameGraph(g, h)
            self.assertEqual(graph_to_json(h), text)

    def test_dot_round_trip(self):
        for g in (even_shift(), wide_graph()):
            text = graph_to_dot(g)
            h = graph_from_dot(text)
            self.assertSameGraph(g, h)
            self.assertEqual(graph_to_dot(h), text)

    def test_isolated_vertex_survives(self):
        g = LabeledGraph(3, ((0, 0, 1),), Alphabet(2))
        self.assertEqual(graph_from_dot(graph_to_dot(g)).vertex_count, 3)
        self.assertEqual(graph_from_json(graph_to_json(g)).vertex_count, 3)

    def test_load_by_extension(self):
        g = wide_graph()
        with tempfile.TemporaryDirectory() as directory:
            for name, text in (('shift.dot', graph_to_dot(g)), ('shift.gv', graph_to_dot(g)),
                               ('shift.json', graph_to_json(g))):
                path = os.path.join(directory, name)
                with open(path, 'w', encoding='utf-8') as f:
                    f.write(text)
                self.assertSameGraph(g, load_graph(path))

    def test_malformed_input(self):
        with self.assertRaises(FormatError) as raised:
            graph_from_json('{"alphabet_size": 2, "vertices": 1, "edges": [{"src": 0, "dst": 0}]}')
        self.assertEqual(raised.exception.position, '$.edges[0].label')
        with self.assertRaises(FormatError):
            graph_from_json('{"alphabet_size": 2')
        with self.assertRaises(FormatError):
            graph_from_dot('digraph shift { 0 -> 0 [label="0"]; }')
        with self.assertRaises(FormatError):
            graph_from_dot('digraph shift {\n  graph [alphabet_size=2, vertices=1];\n  0 -> 0 [label="5"];\n}\n')
        with self.assertRaises(FormatError):
            load_graph('/nonexistent/shift.json')


class WordFormatTestCase(SimpleTestCase):

    def test_wide_alphabet_uses_commas(self):
        alphabet = Alphabet(12)
        self.assertEqual(format_word((10, 0, 11), 12), '10,0,11')
        self.assertEqual(parse_word('10,0,11', alphabet), (10, 0, 11))
        self.assertEqual(parse_word('11', alphabet), (11,))

    def test_binary_words_are_digit_strings(self):
        self.assertEqual(format_word((0, 1, 1)), '011')
        self.assertEqual(parse_word('011', Alphabet(2)), (0, 1, 1))
        self.assertEqual(parse_word(''), ())

    def test_invalid_words(self):
        with self.assertRaises(FormatError):
            parse_word('01x')
        with self.assertRaises(FormatError):
            parse_word('1,a')


class FormatPropertiesTestCase(TestCase):

    @settings(deadline=None, max_examples=100)
    @given(small_graphs(max_vertices=5, alphabet_size=12))
    def test_graph_round_trips(self, g):
        text = graph_to_json(g)
        self.assertEqual(graph_to_json(graph_from_json(text)), text)
        dot = graph_to_dot(g)
        self.assertEqual(graph_to_dot(graph_from_dot(dot)), dot)
        self.assertEqual(graph_from_dot(dot).edges, graph_from_json(text).edges)

    @settings(deadline=None, max_examples=100)
    @given(words(alphabet_size=12, max_size=8))
    def test_wide_words_round_trip(self, w):
        alphabet = Alphabet(12)
        self.assertEqual(parse_word(format_word(w, 12), alphabet), w)
