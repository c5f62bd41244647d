"""Higher-order motif clustering accelerated by maximal k-edge-connected decomposition."""

from .graph import Graph, VertexMap, connected_components, induced_subgraph, load_edge_list
from .kcc import Decomposition, decompose, decompose_from_base
from .mincut import CutResult, sw_mincut, sw_mincut_bounded
from .motif import CATALOG, MotifSpec, enumerate_motifs, get_motif, motif_adjacency, motif_conductance
from .pipeline import ChiefConfig, ClusterSet, RunStats, classify_mode, prune, run_chief, st_preservation_check
from .spectral import build_laplacian, fiedler_vector, sweep_cut
from .synth import SynthSpec, generate

__version__ = "0.1.0"

__all__ = [
    "CATALOG",
    "ChiefConfig",
    "ClusterSet",
    "CutResult",
    "Decomposition",
    "Graph",
    "MotifSpec",
    "RunStats",
    "SynthSpec",
    "VertexMap",
    "build_laplacian",
    "classify_mode",
    "connected_components",
    "decompose",
    "decompose_from_base",
    "enumerate_motifs",
    "fiedler_vector",
    "generate",
    "get_motif",
    "induced_subgraph",
    "load_edge_list",
    "motif_adjacency",
    "motif_conductance",
    "prune",
    "run_chief",
    "st_preservation_check",
    "sw_mincut",
    "sw_mincut_bounded",
    "sweep_cut",
]
