"""Exact computations of monopole Floer homology for spectrally large three-manifolds."""

__version__ = "0.1.0"
