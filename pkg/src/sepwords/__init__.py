"""Separating binary words with small deterministic finite automata."""

__version__ = "0.1.0"
