"""Twisted hypercube H_n: construction, neighbor algebra, cut families and
exact connectivity oracles."""

from .core import BitRangeView, Vertex, kappa, phi, phi_bits, xor_range
from .reports import VerificationReport
from .structures import (
    CutFamily,
    Path,
    Shape,
    Star,
    path_cut_p2,
    path_cut_pk,
    star_cut_k13,
    star_cut_k14,
    superscript,
)
from .topology import ImplicitTopology, MaterializedTopology, build_recursive, neighbor

__version__ = "0.1.0"

__all__ = [
    "BitRangeView",
    "Vertex",
    "kappa",
    "phi",
    "phi_bits",
    "xor_range",
    "VerificationReport",
    "CutFamily",
    "Path",
    "Shape",
    "Star",
    "path_cut_p2",
    "path_cut_pk",
    "star_cut_k13",
    "star_cut_k14",
    "superscript",
    "ImplicitTopology",
    "MaterializedTopology",
    "build_recursive",
    "neighbor",
    "__version__",
]
