"""Exact Hochschild (co)homology of bound quiver algebras and arrow surgery."""

__version__ = "0.1.0"
