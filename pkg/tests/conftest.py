import pytest

from cactusroute.decompose import (classify_roles, heavy_path_decompose,
                                   make_codebook)
from cactusroute.graph import (Graph, build_depth_tree, default_root_cycle,
                               validate_cactus)
from cactusroute.modify import modify_graph
from cactusroute.params import EmbedParams


class Built:
    """Everything the pipeline produces for one graph, built once."""

    def __init__(self, graph, variant, root_cycle=None):
        self.graph = graph
        self.variant = variant
        self.decomp = validate_cactus(graph)
        root = root_cycle if root_cycle is not None else default_root_cycle(self.decomp)
        self.tree = build_depth_tree(self.decomp, root)
        self.hpd = heavy_path_decompose(self.tree)
        self.roles = classify_roles(self.tree, self.hpd)
        self.params = EmbedParams(graph.vertex_count, variant)
        self.codebook = (make_codebook(self.tree, self.hpd, self.roles, self.params)
                         if variant == "optimal" else None)
        self.modified = modify_graph(self.tree, self.hpd, self.roles,
                                     self.params, self.codebook)


@pytest.fixture
def build():
    return Built


def g(n, edges):
    return Graph.from_edges(n, edges)


# a small stable of hand graphs used across test modules
K2 = g(2, [(0, 1)])
TRIANGLE = g(3, [(0, 1), (1, 2), (0, 2)])
# bridge then a square: two cycles, one light junction
BRIDGE_SQUARE = g(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4)])
# chain of three triangles sharing cut vertices
TRIANGLE_CHAIN = g(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4),
                       (4, 5), (5, 6), (4, 6)])


@pytest.fixture
def hand_graphs():
    return {"k2": K2, "triangle": TRIANGLE, "bridge_square": BRIDGE_SQUARE,
            "triangle_chain": TRIANGLE_CHAIN}
