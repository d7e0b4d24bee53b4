"""Realize the Euclidean embedding and audit everything it promises.

The geometric quantities shrink doubly exponentially with depth, so this
demo sticks to a small chain; deeper graphs route fine combinatorially but
their geometry exceeds the precision ceiling.

Run:  python3 demos/geometry_audit.py
"""

from cactusroute.corpus import gen_cactus
from cactusroute.embed import embed
from cactusroute.verify import (audit_underestimates, check_greedy,
                                sample_lemma1)

from embed_and_route import build


def main():
    graph = gen_cactus(6, "chain", seed=0)
    modified = build(graph)
    emb = embed(modified)
    sched = emb.schedule()
    print("embedding depth %d, schedule decided at %d bits"
          % (emb.depth, sched.precision))
    print("radii:", ", ".join(r.decimal(12) for r in sched.R))

    print("\ngreedy audit (all ordered pairs, certified intervals):")
    print(check_greedy(emb).text())

    print("\nschedule underestimates vs brute-force measured minima:")
    print(audit_underestimates(emb).text())

    print("\nrandom constraint-satisfying instances of the distance lemma:")
    print(sample_lemma1(500, seed=0).text())


if __name__ == "__main__":
    main()
