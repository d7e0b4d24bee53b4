"""Generate a cactus, assign succinct coordinates, and route with integers.

Run:  python3 demos/embed_and_route.py [n] [seed]
"""

import sys

from cactusroute import assign_coordinates, compare_D, encode
from cactusroute.corpus import gen_cactus
from cactusroute.decompose import (classify_roles, heavy_path_decompose,
                                   make_codebook)
from cactusroute.graph import build_depth_tree, default_root_cycle, validate_cactus
from cactusroute.modify import modify_graph
from cactusroute.params import EmbedParams
from cactusroute.router import DComparator, route


def build(graph, variant="log2"):
    decomp = validate_cactus(graph)
    tree = build_depth_tree(decomp, default_root_cycle(decomp))
    hpd = heavy_path_decompose(tree)
    roles = classify_roles(tree, hpd)
    params = EmbedParams(graph.vertex_count, variant)
    codebook = (make_codebook(tree, hpd, roles, params)
                if variant == "optimal" else None)
    return modify_graph(tree, hpd, roles, params, codebook)


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    seed = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    graph = gen_cactus(n, "uniform", seed)
    print("graph: %d vertices, %d edges" % (graph.vertex_count, len(graph.edges)))

    modified = build(graph)
    coords = assign_coordinates(modified)
    print("\ncoordinates (bits are all a router ever stores):")
    for v in sorted(coords):
        print("  %2d  %s" % (v, encode(coords[v])))

    src, dst = 0, max(coords, key=lambda v: compare_D(coords[0], coords[v]).D)
    trace = route(graph.adjacency, src, dst, DComparator(coords))
    print("\nroute %d -> %d (D value per hop):" % (src, dst))
    for v, d in zip(trace.hops, trace.values):
        print("  at %2d   D = %d" % (v, d))
    print("delivered in %d hops" % trace.hop_count)


if __name__ == "__main__":
    main()
