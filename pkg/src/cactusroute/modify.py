"""Graph modification: stretch the depth tree with dummy edges.

log2 variant: every light junction (parent C1, child C2 sharing p) is split;
p stays on C1 and a path of plain dummy 2-cycles descends so that the head
of C2's heavy path lands on the next depth that is a multiple of n.

optimal variant: each cycle's depth inside its super period is its level
code.  Consecutive cycles on one heavy path are separated by *heavy* dummy
2-cycles (still considered on the path, turnpike at the reserved rank);
light junctions get plain dummies up to the next super boundary and heavy
dummies down to the child's coded level.  The root cycle is embedded
directly at its own coded level -- no dummies above it -- which is why
coordinates later carry a root_level field.

Dummy chains reuse the original vertex id for the upper copy of a split
vertex, so collapsing a chain is simply deleting its dummy vertices.
Placeholder vertices (for 2-cycles whose only placeable vertex is the
turnpike) are materialized as dummy vertices occupying arc position 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import orient_cycles
from .graph import Graph


class PositionCollision(Exception):
    """Two vertices of one cycle assigned the same angular position."""


@dataclass
class ModCycle:
    idx: int
    parent_idx: object  # int or None
    primary: object  # vertex id, or None for the root cycle
    depth: int
    kind: str  # "real" | "plain" | "heavy"  (dummy kinds per their edges)
    orig: object  # original cycle id for real cycles, else None
    ring: tuple  # vertices in cyclic order (primary first when present)
    positions: dict  # placed vertex -> angular position
    turnpike: object  # vertex at the reserved rank, or None
    placeholder: object  # placeholder vertex at arc position 0, or None

    def edges(self):
        if len(self.ring) == 2:
            return [frozenset(self.ring)]
        k = len(self.ring)
        return [frozenset((self.ring[i], self.ring[(i + 1) % k])) for i in range(k)]


@dataclass
class ModifiedGraph:
    base: Graph
    params: object
    tree: object
    hpd: object
    cycles: list  # ModCycle, in non-decreasing depth order
    dummy_vertices: set  # all inserted vertices, placeholders included
    placeholder_vertices: set
    dummy_edges: dict  # frozenset edge -> "plain" | "heavy"
    origin: dict  # dummy vertex -> (parent orig cycle, child orig cycle)
    mod_of: dict  # original cycle id -> index into cycles
    vertex_count: int

    @property
    def max_depth(self):
        return max(c.depth for c in self.cycles)

    def vertex_level(self):
        """Semi-circle index of every placed vertex."""
        lvl = {}
        for c in self.cycles:
            for v in c.positions:
                lvl[v] = c.depth
        return lvl

    def placement(self):
        """vertex -> (cycle index, angular position) where it is placed."""
        out = {}
        for c in self.cycles:
            for v, q in c.positions.items():
                out[v] = (c.idx, q)
        return out

    def all_edges(self):
        out = set()
        for c in self.cycles:
            out.update(c.edges())
        return out

    def graph(self):
        return Graph.from_edges(self.vertex_count, [tuple(sorted(e)) for e in self.all_edges()])

    def contracted_base(self):
        """Collapse all dummy chains and drop placeholders; must equal base."""
        rep = {}

        def find(v):
            while rep.get(v, v) != v:
                rep[v] = rep.get(rep[v], rep[v])
                v = rep[v]
            return v

        for e, _kind in self.dummy_edges.items():
            a, b = sorted(e)
            if a in self.placeholder_vertices or b in self.placeholder_vertices:
                continue
            # merge toward the smaller id; originals are smaller than dummies
            ra, rb = sorted((find(a), find(b)))
            rep[rb] = ra
        edges = set()
        for e in self.all_edges():
            a, b = e
            if a in self.placeholder_vertices or b in self.placeholder_vertices:
                continue
            ra, rb = find(a), find(b)
            if ra != rb:
                edges.add((min(ra, rb), max(ra, rb)))
        return Graph.from_edges(self.base.vertex_count, edges)


def _sequential_positions(items, turnpike_index, tau):
    """log2 placement: clockwise 0,1,2,... with the turnpike lifted to tau."""
    pos = {}
    if turnpike_index is None:
        for i, v in enumerate(items):
            pos[v] = i
    else:
        for i, v in enumerate(items):
            if i < turnpike_index:
                pos[v] = i
            elif i == turnpike_index:
                pos[v] = tau
            else:
                pos[v] = tau + (i - turnpike_index)
    return pos


def modify_graph(tree, hpd, roles, params, codebook=None):
    if params.variant == "optimal" and codebook is None:
        raise ValueError("the optimal variant needs a CodeBook")
    oris = codebook.orientations if codebook is not None else orient_cycles(tree, roles)
    S = params.levels_per_super
    tau = params.turnpike_rank

    if params.variant == "optimal":
        level_of = codebook.level_value
    else:
        level_of = hpd.relative_depth
    super_of = {tree.root: 0}
    for cid in sorted(tree.cycle_depth, key=tree.cycle_depth.get):
        if cid == tree.root:
            continue
        par = tree.parent[cid]
        light = hpd.path_of[par] != hpd.path_of[cid]
        super_of[cid] = super_of[par] + (1 if light else 0)
    depth_of = {cid: super_of[cid] * S + level_of[cid] for cid in super_of}

    cycles = []
    dummy_vertices, placeholder_vertices = set(), set()
    dummy_edges, origin, mod_of = {}, {}, {}
    counter = [params.n]

    def fresh():
        counter[0] += 1
        return counter[0] - 1

    def check_positions(cyc):
        seen = {}
        for v, q in cyc.positions.items():
            if not (0 <= q < params.positions_per_arc):
                raise PositionCollision("position %d out of range" % q)
            if q in seen:
                raise PositionCollision(
                    "vertices %d and %d share position %d" % (seen[q], v, q))
            if q == tau and v != cyc.turnpike:
                raise PositionCollision("reserved rank taken by non-turnpike %d" % v)
            seen[q] = v

    def emit_chain(anchor, anchor_depth, parent_idx, kinds, orig_pair):
        a, idx = anchor, parent_idx
        for j, kind in enumerate(kinds):
            b = fresh()
            dummy_vertices.add(b)
            origin[b] = orig_pair
            if kind == "heavy":
                q = fresh()
                dummy_vertices.add(q)
                placeholder_vertices.add(q)
                origin[q] = orig_pair
                cyc = ModCycle(len(cycles), idx, a, anchor_depth + 1 + j, kind,
                               None, (a, q, b), {q: 0, b: tau}, b, q)
            else:
                cyc = ModCycle(len(cycles), idx, a, anchor_depth + 1 + j, kind,
                               None, (a, b), {b: 0}, None, None)
            for e in cyc.edges():
                dummy_edges[e] = kind
            check_positions(cyc)
            cycles.append(cyc)
            a, idx = b, cyc.idx
        return a, idx

    for cid in sorted(tree.cycle_depth, key=lambda c: (tree.cycle_depth[c], c)):
        ori = oris[cid]
        if params.variant == "optimal":
            positions = {v: codebook.cycle_value[v] for v in ori.items}
        else:
            positions = _sequential_positions(ori.items, ori.turnpike_index, tau)
        turnpike = ori.items[ori.turnpike_index] if ori.turnpike_index is not None else None
        if cid == tree.root:
            cyc = ModCycle(len(cycles), None, None, depth_of[cid], "real", cid,
                           ori.items, positions, turnpike, None)
        else:
            par = tree.parent[cid]
            p = tree.primary_node[cid]
            gap = depth_of[cid] - depth_of[par] - 1
            assert gap >= 0
            if hpd.path_of[par] == hpd.path_of[cid]:
                kinds = ["heavy"] * gap
            else:
                boundary = (super_of[par] + 1) * S
                kinds = ["plain" if d < boundary else "heavy"
                         for d in range(depth_of[par] + 1, depth_of[cid])]
            primary, pidx = emit_chain(p, depth_of[par], mod_of[par], kinds, (par, cid))
            placeholder = None
            ring = (primary,) + ori.items
            if ori.needs_placeholder:
                placeholder = fresh()
                dummy_vertices.add(placeholder)
                placeholder_vertices.add(placeholder)
                origin[placeholder] = (cid, cid)
                positions[placeholder] = 0
                ring = (primary, placeholder) + ori.items
            cyc = ModCycle(len(cycles), pidx, primary, depth_of[cid], "real", cid,
                           ring, positions, turnpike, placeholder)
            if placeholder is not None:
                for e in cyc.edges():
                    if placeholder in e:
                        dummy_edges[e] = "plain"
        check_positions(cyc)
        mod_of[cid] = cyc.idx
        cycles.append(cyc)

    cycles.sort(key=lambda c: c.depth)
    reindex = {c.idx: i for i, c in enumerate(cycles)}
    for i, c in enumerate(cycles):
        c.parent_idx = reindex[c.parent_idx] if c.parent_idx is not None else None
        c.idx = i
    mod_of = {cid: reindex[i] for cid, i in mod_of.items()}

    return ModifiedGraph(tree.decomp.graph, params, tree, hpd, cycles,
                         dummy_vertices, placeholder_vertices, dummy_edges,
                         origin, mod_of, counter[0])
