"""Exact arithmetic for globally generated vector bundles with c_1 = 5 on P^n."""

__version__ = "0.1.0"
