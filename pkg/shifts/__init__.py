"""
Symbolic dynamics toolkit: sofic shifts, d-bar distances, measure centers
and the explicit constructions built on top of them.
"""

__version__ = '1.0.0'
