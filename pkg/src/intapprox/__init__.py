"""Exact-arithmetic toolkit for integral Diophantine approximation on
log pairs over the rationals: heights, distances, curve parametrizations,
integral-point enumeration on a del Pezzo degree-6 model, and split toric
varieties."""

__version__ = "0.1.0"
