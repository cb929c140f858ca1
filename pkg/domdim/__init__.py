"""Dominant dimension of bound quiver algebras with monomial relations."""

__version__ = "0.1.0"
