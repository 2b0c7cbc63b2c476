"""Simple pseudoline arrangements encoded as rank-3 signotopes."""
from .coloring import Coloring
from .errors import PslabError
from .geometry import RationalLine, signotope_from_lines
from .hypergraph import Hypergraph
from .signotope import Signotope, cyclic, enumerate_all, flip, flip_path, is_valid
from .wiring import WiringDiagram, faces, from_wiring, to_wiring

__all__ = [
    "Coloring", "Hypergraph", "PslabError", "RationalLine", "Signotope", "WiringDiagram",
    "cyclic", "enumerate_all", "faces", "flip", "flip_path", "from_wiring", "is_valid",
    "signotope_from_lines", "to_wiring",
]
