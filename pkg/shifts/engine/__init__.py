"""Computable objects of symbolic dynamics: words, graphs, measures, frequencies."""
