"""Twisted-wreath coset graphs for the affine family q^2:SL(2,q)."""

__version__ = "0.1.0"
