"""Succinct vertex coordinates: level-cycle pairs, bit codec, comparison.

A vertex's coordinate lists one (level, cycle) pair per super-level period
on the path from the root cycle to the vertex: every off-ramp where a heavy
path change occurs contributes its pair, and the final pair is the vertex's
own.  Together with the root cycle's level (needed because nothing else
says where period 0 starts) this pins down the full chain of turnpikes and
off-ramps above the vertex, hence its Euclidean point -- computed here from
the coordinate and the global parameters alone, never from the graph.

The comparison rule D counts the potential number of left/right/down/up
edge traversals between two coordinates and is consistent with Euclidean
distance along greedy routes, so routing needs integers only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .decompose import CodeOverflow, inorder_rank
from .numerics import IntervalContext
from .schedule import compute_schedule


class MalformedBits(Exception):
    """A serialized coordinate that cannot be decoded."""


class IncompatibleParams(Exception):
    """Comparison of coordinates from different parameter sets."""


@dataclass(frozen=True)
class LevelCyclePair:
    level: int
    cycle: int


@dataclass(frozen=True)
class Coordinate:
    pairs: tuple  # LevelCyclePair per super-level period, root side first
    root_level: int  # level of the root cycle inside period 0
    params: object  # EmbedParams

    def __post_init__(self):
        S = self.params.levels_per_super
        P = self.params.positions_per_arc
        if not self.pairs:
            raise ValueError("coordinate needs at least its own pair")
        for pr in self.pairs:
            if not (0 <= pr.level < S):
                raise ValueError("level %d outside [0, %d)" % (pr.level, S))
            if not (0 <= pr.cycle < P):
                raise ValueError("cycle %d outside [0, %d)" % (pr.cycle, P))
        if not (0 <= self.root_level <= self.pairs[0].level):
            raise ValueError(
                "root level %d not within [0, %d]" % (self.root_level, self.pairs[0].level))

    @property
    def superlevel(self):
        return len(self.pairs) - 1

    @property
    def level(self):
        return self.pairs[-1].level

    @property
    def cycle(self):
        return self.pairs[-1].cycle

    @property
    def depth(self):
        """Absolute semi-circle index of the vertex."""
        return self.superlevel * self.params.levels_per_super + self.level

    def to_jsonable(self):
        return {
            "pairs": [[p.level, p.cycle] for p in self.pairs],
            "root_level": self.root_level,
            "bits": encode(self),
        }


def assign_coordinates(modified):
    """Coordinate for every vertex of the base graph."""
    tree, hpd = modified.tree, modified.hpd
    params = modified.params
    S = params.levels_per_super
    mc = {cid: modified.cycles[i] for cid, i in modified.mod_of.items()}
    root_level = mc[tree.root].depth
    out = {}
    for v in range(modified.base.vertex_count):
        home = tree.home_cycle(v)
        rev = []
        cid = home
        while cid != tree.root:
            par = tree.parent[cid]
            if hpd.path_of[par] != hpd.path_of[cid]:
                p = tree.primary_node[cid]
                rev.append(LevelCyclePair(mc[par].depth % S, mc[par].positions[p]))
            cid = par
        pairs = tuple(reversed(rev)) + (
            LevelCyclePair(mc[home].depth % S, mc[home].positions[v]),)
        coord = Coordinate(pairs, root_level, params)
        assert coord.depth == mc[home].depth
        out[v] = coord
    return out


# ---------------------------------------------------------------------------
# Oblivious reconstruction of Euclidean points
# ---------------------------------------------------------------------------


def decode_walk(coord):
    """(depth, angular rank) of every vertex on the root-to-v primary chain.

    Inside period k, every level short of the pair's is crossed through a
    turnpike (reserved rank), the pair's own level holds the off-ramp (or v
    itself) at the pair's cycle value, and the levels past it hold plain
    dummy vertices hanging radially at rank 0.
    """
    S = coord.params.levels_per_super
    tau = coord.params.turnpike_rank
    walk = []
    for d in range(coord.root_level, coord.depth + 1):
        k, off = divmod(d, S)
        pr = coord.pairs[k]
        if off < pr.level:
            q = tau
        elif off == pr.level:
            q = pr.cycle
        else:
            q = 0
        walk.append((d, q))
    return walk


def to_euclidean(coord, prec=None, ceiling=None):
    """The vertex's embedded point, from the coordinate and parameters only.

    With `prec` given the schedule is evaluated at exactly that precision,
    which reproduces the embedding's interval endpoints bit for bit.
    """
    params = coord.params
    sched = compute_schedule(params, max(1, coord.depth), prec=prec, ceiling=ceiling)
    ctx = IntervalContext(sched.precision)
    pi = ctx.pi()
    angle = None
    for d, q in decode_walk(coord):
        if angle is None:
            angle = pi - pi * q / params.root_divisor
        else:
            angle = angle - sched.alpha[d - 1] * q / params.arc_divisor
    radius = sched.R[coord.depth]
    return (radius * angle.cos(), radius * angle.sin())


# ---------------------------------------------------------------------------
# Bit codec
# ---------------------------------------------------------------------------
#
# log2 variant: fixed-width fields behind a pair-count prefix.
# optimal variant: each value is stored as its node's root path in the full
# binary tree (length in unary, then the path bits), so short codes -- the
# heavy, frequently-addressed items -- pay few bits and the per-coordinate
# total telescopes to O(log n).


def rank_to_path(rank, height):
    """Root path of the node with the given in-order rank (inorder_rank inverse)."""
    lo, hi = 0, (1 << (height + 1)) - 2
    if not (0 <= rank <= hi):
        raise CodeOverflow("rank %d outside the height-%d tree" % (rank, height))
    path = []
    while True:
        mid = (lo + hi) // 2
        if rank == mid:
            return tuple(path)
        if rank < mid:
            path.append(0)
            hi = mid - 1
        else:
            path.append(1)
            lo = mid + 1


def _field_widths(params):
    level_w = max(1, (params.levels_per_super - 1).bit_length())
    cycle_w = (params.positions_per_arc - 1).bit_length()
    # one pair plus one per light junction; light subtrees at most halve
    max_pairs = params.log_n + 1
    count_w = max(1, (max_pairs - 1).bit_length())
    return level_w, cycle_w, count_w, max_pairs


def _fixed(value, width):
    return format(value, "0%db" % width)


def _unary_path(value, height):
    path = rank_to_path(value, height)
    return "1" * len(path) + "0" + "".join(map(str, path))


class _Cursor:
    def __init__(self, bits):
        self.bits = bits
        self.at = 0

    def take(self, k):
        if self.at + k > len(self.bits):
            raise MalformedBits("bit string ends inside a field")
        piece = self.bits[self.at:self.at + k]
        self.at += k
        return piece

    def take_unary(self, cap):
        k = 0
        while self.take(1) == "1":
            k += 1
            if k > cap:
                raise MalformedBits("unary length exceeds %d" % cap)
        return k

    def done(self):
        if self.at != len(self.bits):
            raise MalformedBits("%d trailing bits" % (len(self.bits) - self.at))


def _take_path_value(cur, height):
    length = cur.take_unary(height)
    path = tuple(int(b) for b in cur.take(length))
    return inorder_rank(path, height)


def encode(coord):
    """Serialize a coordinate to a '0'/'1' string (canonical interchange form)."""
    params = coord.params
    if params.variant == "log2":
        level_w, cycle_w, count_w, max_pairs = _field_widths(params)
        if len(coord.pairs) > max_pairs:
            raise ValueError("coordinate with %d pairs exceeds the %d-pair budget"
                             % (len(coord.pairs), max_pairs))
        out = [_fixed(len(coord.pairs) - 1, count_w)]
        for pr in coord.pairs:
            out.append(_fixed(pr.level, level_w))
            out.append(_fixed(pr.cycle, cycle_w))
        return "".join(out)
    h_l = params.level_tree_height
    h_c = params.cycle_tree_height
    out = [_unary_path(coord.root_level, h_l), "1" * (len(coord.pairs) - 1) + "0"]
    for pr in coord.pairs:
        out.append(_unary_path(pr.level, h_l))
        out.append(_unary_path(pr.cycle, h_c))
    return "".join(out)


def decode(bits, params):
    if set(bits) - {"0", "1"}:
        raise MalformedBits("non-binary characters")
    cur = _Cursor(bits)
    try:
        if params.variant == "log2":
            level_w, cycle_w, count_w, max_pairs = _field_widths(params)
            count = int(cur.take(count_w), 2) + 1
            if count > max_pairs:
                raise MalformedBits("pair count %d over budget" % count)
            pairs = []
            for _ in range(count):
                level = int(cur.take(level_w), 2)
                cycle = int(cur.take(cycle_w), 2)
                pairs.append(LevelCyclePair(level, cycle))
            root_level = 0
        else:
            h_l = params.level_tree_height
            h_c = params.cycle_tree_height
            root_level = _take_path_value(cur, h_l)
            count = cur.take_unary(params.log_n) + 1
            pairs = []
            for _ in range(count):
                level = _take_path_value(cur, h_l)
                cycle = _take_path_value(cur, h_c)
                pairs.append(LevelCyclePair(level, cycle))
        cur.done()
        return Coordinate(tuple(pairs), root_level, params)
    except (ValueError, CodeOverflow) as exc:
        raise MalformedBits(str(exc)) from exc


# ---------------------------------------------------------------------------
# Comparison rule
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DComparison:
    """The potential-edge-count breakdown behind one D(s, t) evaluation."""

    h: int  # index of the first differing pair (divergence period)
    s_C: LevelCyclePair  # off-ramp toward s on the least common ancestor cycle
    t_C: LevelCyclePair  # off-ramp (or turnpike) toward t
    l: int  # potential left hops
    r: int  # potential right hops
    u: int  # semi-circles crossed going up
    d: int  # semi-circles crossed going down
    D: int


def compare_D(s, t):
    """Combinatorial routing potential from s to t; 0 exactly when s = t."""
    if s.params != t.params:
        raise IncompatibleParams("coordinates from different parameter sets")
    params = s.params
    S = params.levels_per_super
    tau = params.turnpike_rank
    two_n = params.positions_per_arc - 1  # arc positions left+right of radial

    m = min(len(s.pairs), len(t.pairs))
    h = m - 1
    for i in range(m):
        if s.pairs[i] != t.pairs[i]:
            h = i
            break
    s_h, t_h = s.pairs[h], t.pairs[h]
    if s_h.level == t_h.level:
        s_c, t_c = s_h, t_h
    elif s_h.level < t_h.level:
        s_c = s_h
        t_c = LevelCyclePair(s_h.level, tau)
    else:
        t_c = t_h
        s_c = LevelCyclePair(t_h.level, tau)

    down = (s.superlevel * S + s.level) - (h * S + s_c.level)
    up = (t.superlevel * S + t.level) - (h * S + t_c.level)

    # ties go to the left-counting branch: descent chains hang at the left
    # end of each arc, so when t_C and s_C coincide the radial descent is
    # the one the Euclidean metric shortens
    if t_c.cycle <= s_c.cycle:
        if down:
            left = s.cycle + two_n * (down - 1) + s_c.cycle - t_c.cycle
        else:
            left = s_c.cycle - t_c.cycle
        right = two_n * (up - 1) + t.cycle if up else 0
    else:
        left = 0
        if down:
            r1 = two_n - s.cycle + two_n * (down - 1) + t_c.cycle - s_c.cycle
        else:
            r1 = t_c.cycle - s_c.cycle
        r2 = two_n * (up - 1) + t.cycle if up else 0
        right = r1 + r2

    total = left + right + params.positions_per_arc * up + down
    return DComparison(h, s_c, t_c, left, right, up, down, total)
