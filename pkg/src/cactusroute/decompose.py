"""Heavy path decomposition, junction roles, and weight-balanced codes.

The depth tree is decomposed into heavy paths (Sleator-Tarjan rule: the
edge to a child is heavy when the child's subtree holds more than half of
the parent's).  Junction vertices between consecutive cycles are classified
as turnpikes (same heavy path), off-ramps (vertex leaving a path) and
on-ramps (the other vertices of the entering cycle).

For the optimal variant, every heavy path gets a weight-balanced binary
tree over its cycles (weights gamma) and every cycle gets one over its
vertices (weights mu).  Root-to-leaf paths in these trees, read as paths in
a full binary tree of fixed height, give each cycle a *level code* and each
vertex a *cycle code*; the code's value is the in-order rank of the path's
endpoint.  The cycle tree is assembled so that every turnpike sits at the
fixed path (left, right), hence all turnpikes share one rank.
"""

from __future__ import annotations

from dataclasses import dataclass


class EmptyItemList(Exception):
    pass


class CodeOverflow(Exception):
    """A code path is longer than the full-tree height it must embed into."""


# ---------------------------------------------------------------------------
# Heavy path decomposition
# ---------------------------------------------------------------------------


@dataclass
class HeavyPathDecomposition:
    tree: object  # DepthTree
    subtree_count: dict  # cycle -> number of cycles in its subtree (n_T)
    edge_label: dict  # (child, parent) -> "heavy" | "light"
    paths: list  # list of cycle lists, head first
    path_of: dict  # cycle -> index into paths
    relative_depth: dict  # cycle -> depth(C) - depth(head(path))

    def head(self, pid):
        return self.paths[pid][0]

    def tail(self, pid):
        return self.paths[pid][-1]

    def next_on_path(self, cid):
        """The next cycle after cid on its heavy path, or None at the tail."""
        path = self.paths[self.path_of[cid]]
        i = path.index(cid)
        return path[i + 1] if i + 1 < len(path) else None


def heavy_path_decompose(tree):
    order = sorted(tree.cycle_depth, key=tree.cycle_depth.get)
    n_t = {cid: 1 for cid in order}
    for cid in reversed(order):
        if cid in tree.parent:
            n_t[tree.parent[cid]] += n_t[cid]
    label = {}
    for cid, par in tree.parent.items():
        label[(cid, par)] = "heavy" if 2 * n_t[cid] > n_t[par] else "light"
    # heavy child is unique when it exists (it holds a strict majority)
    heavy_child = {}
    for cid, par in tree.parent.items():
        if label[(cid, par)] == "heavy":
            assert par not in heavy_child
            heavy_child[par] = cid
    paths, path_of = [], {}
    for cid in order:
        par = tree.parent.get(cid)
        if par is not None and label[(cid, par)] == "heavy":
            continue  # not a head
        path = [cid]
        while path[-1] in heavy_child:
            path.append(heavy_child[path[-1]])
        pid = len(paths)
        paths.append(path)
        for c in path:
            path_of[c] = pid
    rel = {}
    for path in paths:
        top = tree.cycle_depth[path[0]]
        for c in path:
            rel[c] = tree.cycle_depth[c] - top
    return HeavyPathDecomposition(tree, n_t, label, paths, path_of, rel)


@dataclass
class VertexRoles:
    turnpikes: set
    off_ramps: set
    on_ramps: set
    turnpike_of: dict  # cycle -> its turnpike vertex (same-path child junction)


def classify_roles(tree, hpd):
    turnpikes, off_ramps, on_ramps = set(), set(), set()
    turnpike_of = {}
    for c2, c1 in tree.parent.items():
        p = tree.primary_node[c2]
        if hpd.path_of[c1] == hpd.path_of[c2]:
            turnpikes.add(p)
            turnpike_of[c1] = p
        else:
            off_ramps.add(p)
            on_ramps.update(v for v in tree.decomp.cycles[c2] if v != p)
    return VertexRoles(turnpikes, off_ramps, on_ramps, turnpike_of)


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------


def gamma_weight(tree, hpd, cid):
    """Level weight of a cycle: its vertex descendants not carried onward."""
    nxt = hpd.next_on_path(cid)
    n_c = tree.cycle_descendants(cid)
    if nxt is None:
        return n_c
    return n_c - tree.cycle_descendants(nxt)


def mu_weight(tree, v):
    """Cycle weight of a vertex: number of its vertex descendants, v included."""
    return len(tree.vertex_descendants(v))


# ---------------------------------------------------------------------------
# Weight-balanced binary trees
# ---------------------------------------------------------------------------
#
# Nodes are nested tuples: ("leaf", index) or ("node", left, right), where a
# child may be None (only in the two structural levels of the cycle tree).
# Paths are bit tuples, 0 = left.


@dataclass
class WeightBalancedTree:
    leaves: list  # items in order
    weights: list
    root: tuple
    leaf_depth: dict  # item -> depth
    path: dict  # item -> tuple of bits
    total_weight: int

    HEIGHT_CONSTANT = 2  # leaf depth <= 2*log2(W/w_i) + 2


def _split_index(weights):
    """First prefix reaching at least half the total (both sides nonempty)."""
    total = sum(weights)
    acc = 0
    for i in range(1, len(weights)):
        acc += weights[i - 1]
        if 2 * acc >= total:
            return i
    return len(weights) - 1


def _build(items, weights):
    if len(items) == 1:
        return ("leaf", items[0])
    i = _split_index(weights)
    return ("node", _build(items[:i], weights[:i]), _build(items[i:], weights[i:]))


def _walk(node, prefix, path, depth):
    if node is None:
        return
    if node[0] == "leaf":
        path[node[1]] = prefix
        depth[node[1]] = len(prefix)
    else:
        _walk(node[1], prefix + (0,), path, depth)
        _walk(node[2], prefix + (1,), path, depth)


def build_wbbt(items, weights):
    items, weights = list(items), list(weights)
    if not items:
        raise EmptyItemList("cannot balance an empty item list")
    if len(items) != len(weights) or any(w < 1 for w in weights):
        raise ValueError("weights must be positive, one per item")
    root = _build(items, weights)
    path, depth = {}, {}
    _walk(root, (), path, depth)
    return WeightBalancedTree(items, weights, root, depth, path, sum(weights))


def build_cycle_tree(items, weights, turnpike_index=None):
    """The combined tree B_C over a cycle's non-primary vertices.

    Layout: B_C = (B3, B2) with B3 = (B1, turnpike-leaf).  Items before the
    turnpike go to B1, items after it to B2, so the turnpike always has path
    (left, right) -- identical codes across all cycles.  Without a turnpike
    the split index is ceil(m/2) and the turnpike slot stays empty, keeping
    every rank clear of the reserved one.
    """
    items, weights = list(items), list(weights)
    if not items:
        raise EmptyItemList("cycle with no placeable vertices")
    if len(items) != len(weights) or any(w < 1 for w in weights):
        raise ValueError("weights must be positive, one per item")
    if turnpike_index is None:
        k = (len(items) + 1) // 2
        before, tp, after = items[:k], None, items[k:]
        wb, wa = weights[:k], weights[k:]
    else:
        h = turnpike_index
        if not (0 <= h < len(items)):
            raise ValueError("turnpike index out of range")
        before, tp, after = items[:h], items[h], items[h + 1:]
        wb, wa = weights[:h], weights[h + 1:]
    b1 = _build(before, wb) if before else None
    b2 = _build(after, wa) if after else None
    b3 = ("node", b1, ("leaf", tp) if tp is not None else None)
    root = ("node", b3, b2)
    path, depth = {}, {}
    _walk(root, (), path, depth)
    leaves = before + ([tp] if tp is not None else []) + after
    return WeightBalancedTree(leaves, weights, root, depth, path, sum(weights))


def inorder_rank(path, height):
    """In-order rank of the node reached by `path` in a full binary tree."""
    if len(path) > height:
        raise CodeOverflow("path of length %d exceeds height %d" % (len(path), height))
    lo, hi = 0, (1 << (height + 1)) - 2
    for bit in path:
        mid = (lo + hi) // 2
        if bit:
            lo = mid + 1
        else:
            hi = mid - 1
    return (lo + hi) // 2


# ---------------------------------------------------------------------------
# Cycle orientation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """A cycle's placeable vertices in clockwise order.

    `items` excludes the primary vertex for non-root cycles and includes
    every vertex for the root.  `turnpike_index` locates the turnpike among
    the items; `needs_placeholder` marks the 2-cycle whose only item is its
    turnpike (a temporary vertex then occupies arc position 0).
    """

    items: tuple
    turnpike_index: object  # int or None
    needs_placeholder: bool


def orient_cycle(tree, cid, turnpike):
    """Deterministic clockwise order for one cycle's placeable vertices."""
    cyc = list(tree.decomp.cycles[cid])
    if cid == tree.root:
        candidates = []
        for r in range(len(cyc)):
            for rot in (cyc[r:] + cyc[:r], list(reversed(cyc[r:] + cyc[:r]))):
                if rot[0] != turnpike:
                    candidates.append(tuple(rot))
        items = min(candidates)
    else:
        p = tree.primary_node[cid]
        i = cyc.index(p)
        fwd = cyc[i:] + cyc[:i]
        a = tuple(fwd[1:])
        b = tuple(reversed(fwd[1:]))
        if len(a) == 1:
            items = a
        elif a[0] == turnpike:
            items = b
        elif b[0] == turnpike:
            items = a
        else:
            items = min(a, b)
    if turnpike is None:
        return Orientation(items, None, False)
    ti = items.index(turnpike)
    return Orientation(items, ti, len(items) == 1)


def orient_cycles(tree, roles):
    return {
        cid: orient_cycle(tree, cid, roles.turnpike_of.get(cid))
        for cid in range(tree.cycle_count)
    }


# ---------------------------------------------------------------------------
# Code book (optimal variant)
# ---------------------------------------------------------------------------


@dataclass
class CodeBook:
    params: object  # EmbedParams
    level_path: dict  # cycle -> bit tuple in its path tree
    level_value: dict  # cycle -> in-order rank (baby level within super period)
    cycle_path: dict  # vertex -> bit tuple in its home cycle tree
    cycle_value: dict  # vertex -> in-order rank (angular position)
    orientations: dict  # cycle -> Orientation

    def to_jsonable(self):
        return {
            "n": self.params.n,
            "constant_c": self.params.c,
            "level_tree_height": self.params.level_tree_height,
            "cycle_tree_height": self.params.cycle_tree_height,
            "turnpike_rank": self.params.turnpike_rank,
            "level_codes": {
                str(c): {"path": "".join(map(str, self.level_path[c])),
                         "value": self.level_value[c]}
                for c in sorted(self.level_path)
            },
            "cycle_codes": {
                str(v): {"path": "".join(map(str, self.cycle_path[v])),
                         "value": self.cycle_value[v]}
                for v in sorted(self.cycle_path)
            },
        }


def make_codebook(tree, hpd, roles, params):
    """Level and cycle codes for every cycle and vertex (optimal variant)."""
    orientations = orient_cycles(tree, roles)
    level_path, level_value = {}, {}
    for path in hpd.paths:
        weights = [gamma_weight(tree, hpd, c) for c in path]
        wbbt = build_wbbt(path, weights)
        for c in path:
            level_path[c] = wbbt.path[c]
            level_value[c] = inorder_rank(wbbt.path[c], params.level_tree_height)
    cycle_path, cycle_value = {}, {}
    for cid in range(tree.cycle_count):
        ori = orientations[cid]
        weights = [mu_weight(tree, v) for v in ori.items]
        bc = build_cycle_tree(ori.items, weights, ori.turnpike_index)
        for v in ori.items:
            if tree.home_cycle(v) != cid:
                continue  # v is coded where it is embedded (minimum depth)
            cycle_path[v] = bc.path[v]
            cycle_value[v] = inorder_rank(bc.path[v], params.cycle_tree_height)
    return CodeBook(params, level_path, level_value, cycle_path, cycle_value,
                    orientations)
