"""Lune removal in knot diagrams and the color-count bookkeeping around it."""

from .diagrams import Crossing, Diagram, Face, FlatDiagram, Tassel
from .errors import CapExceeded, DeluneError, InvalidDiagram, RewriteError

__version__ = "0.1.0"

__all__ = [
    "Crossing",
    "Diagram",
    "Face",
    "FlatDiagram",
    "Tassel",
    "DeluneError",
    "InvalidDiagram",
    "CapExceeded",
    "RewriteError",
    "__version__",
]
