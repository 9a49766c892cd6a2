"""Restricted Lie algebras of dimension five over finite fields of
characteristic p > 3: cohomology, central extensions and classification checks."""

__version__ = "0.1.0"
