"""Exact certificates for hyperwrons and hyperzouts of hyperbolic polynomials."""

__version__ = "0.1.0"
