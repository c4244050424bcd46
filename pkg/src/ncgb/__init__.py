"""Exact Groebner-basis tools for graded iterated Ore extensions."""
__version__ = "0.1.0"
