"""Bipartite generation graphs of finite groups."""

__version__ = "0.1.0"
