"""Exact construction of the exceptional simple Lie superalgebras
D(2,1;a), G(3) and F(4), and machine verification of their fine gradings."""

__version__ = "0.1.0"
