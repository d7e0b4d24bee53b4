"""Undirected graphs, Christmas cactus validation, and the depth tree.

A Christmas cactus is a connected graph in which every edge lies in at most
one cycle and no vertex separates the graph into more than two components.
Bridges are treated as 2-cycles, so the edge set partitions into simple
cycles.  The cycles form a tree (two cycles adjacent when they share a
vertex); rooting that tree gives the depth tree that all later stages are
built on.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class CactusError(Exception):
    pass


class NotConnected(CactusError):
    pass


class EdgeInTwoCycles(CactusError):
    pass


class CutVertexSplitsThreeWays(CactusError):
    pass


class UnknownRootCycle(CactusError):
    pass


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    vertex_count: int
    edges: frozenset  # frozenset of (u, v) tuples with u < v

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("negative vertex count")
        for u, v in self.edges:
            if u == v:
                raise ValueError("self-loop at %d" % u)
            if not (0 <= u < v < self.vertex_count):
                raise ValueError("bad edge (%d, %d)" % (u, v))

    @classmethod
    def from_edges(cls, n, edges):
        norm = frozenset((min(u, v), max(u, v)) for u, v in edges)
        return cls(n, norm)

    @property
    def adjacency(self):
        adj = {v: [] for v in range(self.vertex_count)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for v in adj:
            adj[v].sort()
        return adj

    def neighbors(self, v):
        return self.adjacency[v]

    def is_connected(self):
        if self.vertex_count == 0:
            return False
        adj = self.adjacency
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertex_count


@dataclass(frozen=True)
class CactusDecomposition:
    """Partition of the edge set into simple cycles (bridges as 2-cycles)."""

    graph: Graph
    cycles: tuple  # tuple of vertex-id tuples, each in cyclic order
    edge_to_cycle: dict  # frozenset edge -> cycle index

    def cycle_edges(self, cid):
        cyc = self.cycles[cid]
        if len(cyc) == 2:
            return [frozenset(cyc)]
        return [frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))]

    def cycles_of_vertex(self, v):
        return [i for i, cyc in enumerate(self.cycles) if v in cyc]


def _dfs_cycles(graph):
    """Decompose edges into simple cycles via DFS back edges.

    In a cactus every back edge closes a cycle of fresh tree edges; a tree
    edge claimed twice witnesses an edge lying on two cycles.  Unclaimed tree
    edges are bridges, returned as 2-cycles.
    """
    adj = graph.adjacency
    parent = {0: None}
    disc = {0: 0}
    order = [0]
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in disc:
                disc[w] = len(order)
                order.append(w)
                parent[w] = v
                stack.append(w)
    depth = {0: 0}
    for w in order[1:]:
        depth[w] = depth[parent[w]] + 1
    claimed = set()
    cycles = []
    for u, v in graph.edges:
        if parent.get(u) == v or parent.get(v) == u:
            continue  # tree edge
        # non-tree edge: close the fundamental cycle through the tree LCA;
        # any spanning tree works, and a doubly-claimed tree edge witnesses
        # an edge on two cycles
        up_u, up_v = [u], [v]
        a, b = u, v
        while a != b:
            if depth[a] >= depth[b]:
                a = parent[a]
                up_u.append(a)
            else:
                b = parent[b]
                up_v.append(b)
        path = up_u + up_v[-2::-1]  # u .. lca .. v
        for i in range(len(path) - 1):
            e = frozenset((path[i], path[i + 1]))
            if e in claimed:
                raise EdgeInTwoCycles("edge %s lies on two cycles" % sorted(e))
            claimed.add(e)
        cycles.append(tuple(path))
    for u, v in graph.edges:
        if (parent.get(u) == v or parent.get(v) == u) and frozenset((u, v)) not in claimed:
            cycles.append((u, v))
    return cycles


def validate_cactus(graph):
    """Check the three Christmas cactus properties; return the decomposition.

    Raises NotConnected, EdgeInTwoCycles, or CutVertexSplitsThreeWays.
    """
    if graph.vertex_count == 0:
        raise CactusError("empty graph")
    if not graph.is_connected():
        raise NotConnected("graph is not connected")
    cycles = _dfs_cycles(graph)
    # canonical dense ids: sort by (lowest vertex, vertex tuple)
    cycles.sort(key=lambda c: (min(c), tuple(sorted(c))))
    membership = {}
    for cid, cyc in enumerate(cycles):
        for v in cyc:
            membership.setdefault(v, []).append(cid)
    for v, cids in membership.items():
        if len(cids) > 2:
            raise CutVertexSplitsThreeWays(
                "removing vertex %d leaves %d components" % (v, len(cids))
            )
    decomp = CactusDecomposition(graph, tuple(cycles), {})
    edge_to_cycle = {}
    for cid in range(len(cycles)):
        for e in decomp.cycle_edges(cid):
            edge_to_cycle[e] = cid
    return CactusDecomposition(graph, tuple(cycles), edge_to_cycle)


@dataclass
class DepthTree:
    """The cycle tree rooted at a chosen cycle."""

    decomp: CactusDecomposition
    root: int
    parent: dict  # cycle -> parent cycle (root absent)
    children: dict  # cycle -> sorted list of child cycles
    cycle_depth: dict
    primary_node: dict  # cycle -> shared vertex with parent (root absent)
    vertex_depth: dict
    _subtree_vertices: dict = field(default_factory=dict, repr=False)

    @property
    def cycle_count(self):
        return len(self.decomp.cycles)

    def home_cycle(self, v):
        """The minimum-depth cycle containing v (where v gets embedded)."""
        cids = self.decomp.cycles_of_vertex(v)
        return min(cids, key=lambda c: self.cycle_depth[c])

    def subtree_vertices(self, cid):
        """All vertices on cycles in the subtree rooted at cid."""
        if cid not in self._subtree_vertices:
            verts = set(self.decomp.cycles[cid])
            for ch in self.children[cid]:
                verts |= self.subtree_vertices(ch)
            self._subtree_vertices[cid] = frozenset(verts)
        return self._subtree_vertices[cid]

    def cycle_descendants(self, cid):
        """n(C): vertex descendants of cycle cid, excluding its primary node."""
        verts = self.subtree_vertices(cid)
        if cid in self.primary_node:
            return len(verts) - 1
        return len(verts)

    def vertex_descendants(self, u):
        """All descendants of vertex u (including u itself)."""
        out = {u}
        for cid, p in self.primary_node.items():
            if p == u:
                out |= set(self.subtree_vertices(cid)) - {u}
        return out


def build_depth_tree(decomp, root_cycle):
    if not (0 <= root_cycle < len(decomp.cycles)):
        raise UnknownRootCycle("no cycle with id %d" % root_cycle)
    # cycle adjacency via shared vertices
    by_vertex = {}
    for cid, cyc in enumerate(decomp.cycles):
        for v in cyc:
            by_vertex.setdefault(v, []).append(cid)
    adj = {cid: set() for cid in range(len(decomp.cycles))}
    for v, cids in by_vertex.items():
        for a in cids:
            for b in cids:
                if a != b:
                    adj[a].add(b)
    parent, primary, depth = {}, {}, {root_cycle: 0}
    children = {cid: [] for cid in range(len(decomp.cycles))}
    frontier = [root_cycle]
    while frontier:
        nxt = []
        for c in frontier:
            for d in sorted(adj[c]):
                if d == root_cycle or d in parent:
                    continue
                parent[d] = c
                shared = set(decomp.cycles[c]) & set(decomp.cycles[d])
                assert len(shared) == 1, "cycles %d,%d share %d vertices" % (
                    c, d, len(shared))
                primary[d] = shared.pop()
                depth[d] = depth[c] + 1
                children[c].append(d)
                nxt.append(d)
        frontier = nxt
    if len(depth) != len(decomp.cycles):
        raise CactusError("cycle tree is not connected")
    vertex_depth = {}
    for cid, cyc in enumerate(decomp.cycles):
        for v in cyc:
            d = depth[cid]
            if v not in vertex_depth or d < vertex_depth[v]:
                vertex_depth[v] = d
    return DepthTree(decomp, root_cycle, parent, children, depth, primary, vertex_depth)


def is_descendant(tree, u, v):
    """Vertex-descendant test via the depth-tree structure."""
    return v in tree.vertex_descendants(u)


def is_descendant_literal(tree, u, v):
    """Definitional test: drop u's neighbors of depth <= depth(u), then check
    whether u and v stay in one component.  Kept as an independent oracle."""
    graph = tree.decomp.graph
    du = tree.vertex_depth[u]
    removed = {w for w in graph.neighbors(u) if tree.vertex_depth[w] <= du}
    if v in removed:
        return False
    adj = graph.adjacency
    seen = {u}
    stack = [u]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen and w not in removed:
                seen.add(w)
                stack.append(w)
    return v in seen


def default_root_cycle(decomp):
    """The cycle containing the lowest-numbered vertex (lowest cycle id wins)."""
    return min(decomp.cycles_of_vertex(min(v for cyc in decomp.cycles for v in cyc)))
