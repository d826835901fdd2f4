"""Exact computation of equivariant L-classes over Borel-construction towers."""

__version__ = "0.1.0"
