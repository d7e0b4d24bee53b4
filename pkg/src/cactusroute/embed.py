"""Embedding of the modified graph on concentric semi-circles.

The combinatorial placement (semi-circle index and integer angular rank for
every vertex) is exact and always available; Euclidean points are realized
lazily from the schedule at a chosen precision, since deep schedules may
exceed the precision ceiling.

Angles: the root cycle's position q sits at angle pi*(1 - q/P) on its
semi-circle.  A deeper cycle's positions are laid clockwise from its primary
node's ray, position q at angular offset alpha_{d-1} * q/(P-1).  In the
log2 variant x_1 holds position 0, so it is exactly radial below its primary
node (subphase 1); in the optimal variant positions are code ranks, and
measuring offsets from the primary's ray (rather than from x_1) is what
lets the coordinate decoder recompute angles without knowing x_1's rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .numerics import IntervalContext
from .schedule import compute_schedule


@dataclass
class Embedding:
    modified: object  # ModifiedGraph
    params: object
    level: dict  # vertex -> semi-circle index
    rank: dict  # vertex -> integer angular position
    keep: object = None  # optional vertex filter (set after collapse)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def vertices(self):
        if self.keep is not None:
            return sorted(self.keep)
        return sorted(self.level)

    @property
    def depth(self):
        return max(self.level.values())

    def edges(self):
        if self.keep is None:
            return self.modified.all_edges()
        # after collapse the edge set is the base graph's (chains contract
        # back onto the surviving endpoints)
        return {frozenset(e) for e in self.modified.base.edges}

    def schedule(self, prec=None, ceiling=None):
        return compute_schedule(self.params, max(1, self.modified.max_depth),
                                prec=prec, ceiling=ceiling)

    def realize(self, prec=None, ceiling=None):
        """vertex -> (x, y) interval point; cached per precision."""
        sched = self.schedule(prec=prec, ceiling=ceiling)
        if sched.precision in self._cache:
            pts = self._cache[sched.precision]
        else:
            pts = _realize_points(IntervalContext(sched.precision), sched,
                                  self.modified)
            self._cache[sched.precision] = pts
        if self.keep is None:
            return pts
        return {v: p for v, p in pts.items() if v in self.keep}

    def to_jsonable(self, prec=None, digits=30, geometry=True):
        out = {
            "n": self.params.n,
            "variant": self.params.variant,
            "vertices": {},
        }
        pts = self.realize(prec=prec) if geometry else None
        for v in self.vertices:
            rec = {"level": self.level[v], "angular_rank": self.rank[v]}
            if pts is not None:
                rec["x"] = pts[v][0].decimal(digits)
                rec["y"] = pts[v][1].decimal(digits)
            out["vertices"][str(v)] = rec
        return out


def _realize_points(ctx, sched, modified):
    pi = ctx.pi()
    root_div = modified.params.root_divisor
    arc_div = modified.params.arc_divisor
    angles, points = {}, {}
    for cyc in modified.cycles:
        if cyc.primary is None:
            for v, q in cyc.positions.items():
                angles[v] = pi - pi * q / root_div
        else:
            base = angles[cyc.primary]
            alpha = sched.alpha[cyc.depth - 1]
            for v, q in cyc.positions.items():
                angles[v] = base - alpha * q / arc_div
        radius = sched.R[cyc.depth]
        for v in cyc.positions:
            th = angles[v]
            points[v] = (radius * th.cos(), radius * th.sin())
    return points


def embed(modified):
    """Combinatorial embedding of a modified graph; geometry is lazy."""
    level, rank = {}, {}
    for cyc in modified.cycles:
        for v, q in cyc.positions.items():
            level[v] = cyc.depth
            rank[v] = q
    return Embedding(modified, modified.params, level, rank)


def collapse_dummies(embedding, modified=None):
    """Restrict an embedding to the base graph's vertices.

    Chains were built reusing the original id for the upper copy of each
    split vertex, so collapsing is dropping every dummy; surviving points
    are untouched.
    """
    mod = modified if modified is not None else embedding.modified
    keep = set(range(mod.base.vertex_count))
    return Embedding(mod, embedding.params, embedding.level, embedding.rank,
                     keep, embedding._cache)
