"""Measure coordinate sizes against n for both addressing variants.

The optimal variant's weight-balanced codes pay O(log n) bits per
coordinate; the simpler log2 variant pays O(log^2 n).  The table shows the
crossover as n grows.

Run:  python3 demos/succinctness.py
"""

import math

from cactusroute import assign_coordinates, encode
from cactusroute.corpus import gen_cactus

from embed_and_route import build


def max_bits(graph, variant):
    coords = assign_coordinates(build(graph, variant))
    return max(len(encode(c)) for c in coords.values())


def main():
    print("%6s %8s %14s %12s %8s" % ("n", "log2(n)", "optimal bits",
                                     "log2 bits", "ratio"))
    for n in (8, 16, 32, 64, 128, 256):
        graph = gen_cactus(n, "caterpillar", seed=n)
        opt = max_bits(graph, "optimal")
        low = max_bits(graph, "log2")
        print("%6d %8.1f %14d %12d %8.2f"
              % (n, math.log2(n), opt, low, opt / low))


if __name__ == "__main__":
    main()
