"""F-signature invariants of cyclic quotient surface singularities 1/n(1,a)."""

__version__ = "0.1.0"
