"""Draw an embedding to SVG, with and without the dummy scaffolding.

Run:  python3 demos/draw_embedding.py [out_prefix]
"""

import sys

from cactusroute.corpus import gen_cactus
from cactusroute.embed import collapse_dummies, embed
from cactusroute.io import embedding_to_svg

from embed_and_route import build


def main():
    prefix = sys.argv[1] if len(sys.argv) > 1 else "cactus"
    graph = gen_cactus(9, "uniform", seed=4)
    emb = embed(build(graph))
    for name, view in (("full", emb), ("collapsed", collapse_dummies(emb))):
        path = "%s_%s.svg" % (prefix, name)
        with open(path, "w") as fh:
            fh.write(embedding_to_svg(view) + "\n")
        print("wrote %s" % path)


if __name__ == "__main__":
    main()
