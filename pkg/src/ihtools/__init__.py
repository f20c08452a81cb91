"""Exact intersection homology of stratified simplicial complexes."""

__version__ = "0.1.0"
