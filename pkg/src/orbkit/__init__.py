"""Exact-arithmetic toolkit for cyclic 4-orbifolds and their Seifert
circle bundles: surgery bookkeeping, homology and Chern-class
invariants, spin decisions, and orbifold fundamental-group bounds."""

__version__ = "0.1.0"
