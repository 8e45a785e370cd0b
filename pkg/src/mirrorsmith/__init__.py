"""Exact computations with mirror-reflective algebras of finite-dimensional
algebras: structure constants, quiver presentations, modules, the mirror
construction, and complexes of projectives."""

__version__ = "0.1.0"
