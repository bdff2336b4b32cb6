"""Magnus-type expansions: exact combinatorics, convergence bounds and 2x2 geometry."""

__version__ = "0.1.0"
