"""Exact-arithmetic audits of discriminant bounds, ray class groups and table fields
for mod-p Galois representations of quadratic fields."""

__version__ = "0.1.0"
