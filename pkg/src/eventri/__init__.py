"""Even triangulations of pseudo-manifolds."""

__version__ = "0.1.0"
