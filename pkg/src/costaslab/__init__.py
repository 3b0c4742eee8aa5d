"""Welch and Golomb Costas permutations: generation, correlation scans and reproduction runs."""

__version__ = "0.1.0"
