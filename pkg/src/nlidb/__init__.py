"""Explainable NL-to-SQL translation over a schema graph."""

__version__ = "0.1.0"
