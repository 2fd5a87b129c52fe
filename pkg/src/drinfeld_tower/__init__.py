"""Drinfeld modular curves over a degree-2 infinite place: genus and point-count formulas,
the explicit derivation of f(h2, h3), and the recursive tower over F_16."""

__version__ = "0.1.0"
