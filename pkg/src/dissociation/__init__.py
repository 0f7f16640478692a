"""Exact tools for the dissociation number of small graphs: enumeration,
extremal searches, spectra and a replay harness for known results."""
from .graph import Graph, complement, from_graph6, to_graph6
from .solvers import d_independence_number, dissociation_number, tau
from .spectral import spectral_radius, spectrum

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "complement",
    "d_independence_number",
    "dissociation_number",
    "from_graph6",
    "spectral_radius",
    "spectrum",
    "tau",
    "to_graph6",
    "__version__",
]
