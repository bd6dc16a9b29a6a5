"""Exact computations in stable module categories of basic self-injective algebras."""

__version__ = "0.1.0"
