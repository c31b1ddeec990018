"""Spectra, Ramanujan certificates and 2-covering searches for regular hypergraphs."""

from .hypercore import Hypergraph, HypergraphError, ParseError
from .spectra import Spectrum

__all__ = ["Hypergraph", "HypergraphError", "ParseError", "Spectrum"]
__version__ = "0.1.0"
