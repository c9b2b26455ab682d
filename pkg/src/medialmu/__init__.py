"""Component number of the flat drawn by a plane multigraph's medial graph."""

from .coloring import extend_coloring, laplacian_mod2, mu_coloring, mu_nullity, mu_regions, region_space_dim
from .flat_trace import MoveSpec, apply_move, components, count_components, simplify
from .gf2 import BACKEND, GF2Matrix
from .harness import MuReport, mu_report
from .medial import Flat, checkerboard, medial
from .plane_graph import PlaneGraph, parse_plane_graph, serialize_plane_graph
from .tutte import mu_tutte, tutte_eval_minus1

__all__ = [
    "BACKEND",
    "Flat",
    "GF2Matrix",
    "MoveSpec",
    "MuReport",
    "PlaneGraph",
    "apply_move",
    "checkerboard",
    "components",
    "count_components",
    "extend_coloring",
    "laplacian_mod2",
    "medial",
    "mu_coloring",
    "mu_nullity",
    "mu_regions",
    "mu_report",
    "mu_tutte",
    "parse_plane_graph",
    "region_space_dim",
    "serialize_plane_graph",
    "simplify",
    "tutte_eval_minus1",
]
