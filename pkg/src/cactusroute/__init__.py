"""Greedy embeddings and succinct-coordinate routing for Christmas cactus graphs."""

from .coords import (Coordinate, LevelCyclePair, assign_coordinates, compare_D,
                     decode, encode, to_euclidean)
from .decompose import classify_roles, heavy_path_decompose, make_codebook
from .embed import Embedding, collapse_dummies, embed
from .graph import (CactusError, Graph, build_depth_tree, default_root_cycle,
                    validate_cactus)
from .modify import ModifiedGraph, modify_graph
from .params import EmbedParams
from .router import DComparator, L2Comparator, RouteTrace, route
from .schedule import compute_schedule

__version__ = "0.1.0"
