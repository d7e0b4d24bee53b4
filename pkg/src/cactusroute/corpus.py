"""Corpus generation: structured and random Christmas cactus graphs.

Shapes:
    chain       -- a path of 3-cycles joined at cut vertices, padded with
                   2-cycles when the vertex count does not work out
    star        -- a central cycle with pendant 2-cycles on its vertices
    caterpillar -- a chain of cycles with pendant 2-cycles along the spine
    uniform     -- seeded random attachment of random-length cycles

`exhaustive_cacti(n)` enumerates every Christmas cactus on exactly n
vertices up to isomorphism, which is feasible for small n and is the
backbone of the verification corpus.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .graph import Graph, validate_cactus, build_depth_tree


class InfeasibleShape(Exception):
    pass


def _chain_cycle_lengths(n):
    """Cycle lengths for a chain totalling n vertices (3-cycles, 2-pad)."""
    if n < 2:
        raise InfeasibleShape("need n >= 2")
    lengths = []
    remaining = n - 1  # each cycle of length k contributes k-1 past the shared vertex
    while remaining >= 2:
        lengths.append(3)
        remaining -= 2
    if remaining == 1:
        lengths.append(2)
    return lengths


def _build_cycle_chain(lengths):
    edges = []
    nxt = 1
    joint = 0
    for k in lengths:
        fresh = list(range(nxt, nxt + k - 1))
        nxt += k - 1
        cyc = [joint] + fresh
        if k == 2:
            edges.append((cyc[0], cyc[1]))
        else:
            edges.extend((cyc[i], cyc[(i + 1) % k]) for i in range(k))
        joint = cyc[-1]
    return Graph.from_edges(nxt, edges)


def gen_cactus(n, shape="uniform", seed=0):
    """A valid Christmas cactus on exactly n vertices."""
    if n < 2:
        raise InfeasibleShape("need n >= 2")
    if n == 2:
        g = Graph.from_edges(2, [(0, 1)])
    elif shape == "chain":
        g = _build_cycle_chain(_chain_cycle_lengths(n))
    elif shape == "star":
        core = max(3, (n + 1) // 2) if n >= 4 else n
        core = min(core, n)
        pendants = n - core
        if pendants > core:
            core = (n + 1) // 2 + (n + 1) % 2
            pendants = n - core
        edges = [(i, (i + 1) % core) for i in range(core)] if core >= 3 else [(0, 1)]
        for j in range(pendants):
            edges.append((j % core, core + j))
        g = Graph.from_edges(n, edges)
    elif shape == "caterpillar":
        rng = random.Random(seed)
        lengths = []
        remaining = n - 1
        while remaining >= 2:
            k = rng.choice([2, 3, 4])
            k = min(k, remaining + 1)
            lengths.append(k)
            remaining -= k - 1
        if remaining == 1:
            lengths.append(2)
        g = _build_cycle_chain(lengths)
    elif shape == "uniform":
        g = _gen_uniform(n, random.Random(seed))
    else:
        raise InfeasibleShape("unknown shape %r" % shape)
    validate_cactus(g)
    if g.vertex_count != n:
        raise InfeasibleShape("shape %r missed target n=%d" % (shape, n))
    return g


def _gen_uniform(n, rng):
    """Grow a cactus by attaching random cycles at random eligible vertices."""
    edges = [(0, 1)]
    cycles_at = {0: 1, 1: 1}
    nxt = 2
    while nxt < n:
        eligible = [v for v, c in cycles_at.items() if c < 2]
        host = rng.choice(eligible)
        budget = n - nxt
        k = rng.randint(2, min(budget + 1, 6))  # cycle length, adds k-1 vertices
        fresh = list(range(nxt, nxt + k - 1))
        nxt += k - 1
        cyc = [host] + fresh
        if k == 2:
            edges.append((cyc[0], cyc[1]))
        else:
            edges.extend((cyc[i], cyc[(i + 1) % k]) for i in range(k))
        cycles_at[host] += 1
        for v in fresh:
            cycles_at[v] = 1
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Exhaustive enumeration up to isomorphism
# ---------------------------------------------------------------------------
#
# A rooted piece is (k, slots): a cycle of length k whose primary vertex is
# attachment point, with slots[i] the piece hanging at the (i+1)-th vertex
# around the cycle (the empty tuple for an empty slot).  Pieces are kept canonical under the
# reflection that fixes the primary vertex.


def _canon_piece(k, slots):
    a = tuple(slots)
    b = tuple(reversed(slots))
    return (k, min(a, b))


@lru_cache(maxsize=None)
def _pieces(n):
    """All canonical rooted pieces with n vertices (primary included)."""
    out = set()
    for k in range(2, n + 1):
        for filling in _fill_slots(k - 1, n - k):
            out.add(_canon_piece(k, filling))
    return sorted(out)


def _fill_slots(nslots, budget):
    """All ways to hang pieces on nslots ordered slots, spending budget
    extra vertices (a piece of size m costs m-1)."""
    if nslots == 0:
        return [()] if budget == 0 else []
    results = []
    for first_cost in range(0, budget + 1):
        if first_cost == 0:
            firsts = [()]  # empty slot
        elif first_cost == 1:
            firsts = []
        else:
            firsts = _pieces(first_cost + 1)
        if not firsts:
            continue
        for rest in _fill_slots(nslots - 1, budget - first_cost):
            for f in firsts:
                results.append((f,) + rest)
    return results


def _root_candidates(n):
    """Canonical whole-graph structures: root cycle with k dihedral slots."""
    out = set()
    for k in range(2, n + 1):
        for filling in _fill_slots(k, n - k):
            variants = []
            for r in range(k):
                rot = filling[r:] + filling[:r]
                variants.append(rot)
                variants.append(tuple(reversed(rot)))
            out.add((k, min(variants)))
    return sorted(out)


def _realize(k, slots, rooted=True):
    """Build a Graph from a structure; returns (graph, n)."""
    edges = []
    counter = [0]

    def new_vertex():
        counter[0] += 1
        return counter[0] - 1

    def build_piece(primary, piece):
        pk, pslots = piece
        verts = [primary] + [new_vertex() for _ in range(pk - 1)]
        if pk == 2:
            edges.append((verts[0], verts[1]))
        else:
            edges.extend((verts[i], verts[(i + 1) % pk]) for i in range(pk))
        for i, child in enumerate(pslots):
            if child:
                build_piece(verts[i + 1], child)

    root_verts = [new_vertex() for _ in range(k)]
    if k == 2:
        edges.append((root_verts[0], root_verts[1]))
    else:
        edges.extend((root_verts[i], root_verts[(i + 1) % k]) for i in range(k))
    for i, child in enumerate(slots):
        if child:
            build_piece(root_verts[i], child)
    return Graph.from_edges(counter[0], edges)


def graph_certificate(graph):
    """Canonical certificate of a Christmas cactus (exact for cacti)."""
    decomp = validate_cactus(graph)

    def piece_cert(tree, cid):
        cyc = list(decomp.cycles[cid])
        k = len(cyc)
        p = tree.primary_node[cid]
        idx = cyc.index(p)
        fwd = cyc[idx:] + cyc[:idx]
        child_at = {tree.primary_node[ch]: ch for ch in tree.children[cid]}
        orders = [fwd[1:], list(reversed(fwd[1:]))]
        certs = []
        for order in orders:
            certs.append(tuple(
                piece_cert(tree, child_at[v]) if v in child_at else ()
                for v in order))
        return (k, min(certs))

    best = None
    for root in range(len(decomp.cycles)):
        tree = build_depth_tree(decomp, root)
        cyc = list(decomp.cycles[root])
        k = len(cyc)
        child_at = {tree.primary_node[ch]: ch for ch in tree.children[root]}
        variants = []
        for r in range(k):
            rot = cyc[r:] + cyc[:r]
            for order in (rot, list(reversed(rot))):
                variants.append(tuple(
                    piece_cert(tree, child_at[v]) if v in child_at else ()
                    for v in order))
        cert = (k, min(variants))
        if best is None or cert < best:
            best = cert
    return best


def exhaustive_cacti(n):
    """Every Christmas cactus on exactly n vertices, up to isomorphism."""
    seen = {}
    for k, slots in _root_candidates(n):
        g = _realize(k, slots)
        assert g.vertex_count == n
        cert = graph_certificate(g)
        if cert not in seen:
            seen[cert] = g
    return [seen[c] for c in sorted(seen)]
