"""Entanglement-assisted quantum MDS codes from cyclic codes of length (q^2+1)/a."""

__version__ = "0.1.0"
