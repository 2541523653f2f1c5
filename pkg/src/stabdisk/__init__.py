"""Exact disk/point constructions for geometric hypergraph coloring."""

__version__ = "0.1.0"
