"""Exact tools for factorizations of finite cyclic groups and multiplier-set splittings."""

__version__ = "0.1.0"
