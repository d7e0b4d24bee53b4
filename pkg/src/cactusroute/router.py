"""Greedy routing over coordinate-labeled cactus graphs.

The router is deliberately thin: pick, among the current vertex's skeleton
neighbors, the one whose comparator value to the target is smallest (lowest
id on ties), check that it is a strict improvement, hop, repeat.  The
comparator is pluggable -- the integer rule D for production use, or
certified interval L2 distance for auditing the consistency claim.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .coords import compare_D
from .numerics import PrecisionExhausted, distance


class Stuck(Exception):
    """No neighbor strictly improves; must never happen on a valid embedding."""


class HopLimitExceeded(Exception):
    """Route ran past its hop budget; carries the partial trace."""

    def __init__(self, message, trace):
        super().__init__(message)
        self.trace = trace


class DComparator:
    """Compare routes by the integer potential D; exact, no geometry."""

    name = "D"

    def __init__(self, coords):
        self.coords = coords

    def value(self, u, t):
        return compare_D(self.coords[u], self.coords[t]).D

    def less(self, a, b):
        return a < b


class L2Comparator:
    """Compare by certified interval distance to the target's point.

    Comparisons undecided at the working precision are retried at doubled
    precision a bounded number of times; a remaining overlap is treated as
    a tie.  Exact ties do occur in symmetric embeddings -- no precision
    decides them -- and breaking them by vertex id is safe because strict
    decrease against the current vertex is certified separately.
    """

    name = "l2"

    def __init__(self, embedding, prec=None, ceiling=None, max_retries=2):
        self.embedding = embedding
        self.prec = prec
        self.ceiling = ceiling
        self.max_retries = max_retries

    def value(self, u, t):
        pts = self.embedding.realize(prec=self.prec, ceiling=self.ceiling)
        return distance(pts[u], pts[t])

    def compare_neighbors(self, u, w, t):
        """u strictly closer to t than w, retrying at doubled precision."""
        pts = self.embedding.realize(prec=self.prec, ceiling=self.ceiling)
        prec = pts[u][0].ctx.prec
        for _ in range(self.max_retries + 1):
            r = distance(pts[u], pts[t]).strictly_less(distance(pts[w], pts[t]))
            if r is not None:
                return r
            try:
                prec *= 2
                pts = self.embedding.realize(prec=prec, ceiling=self.ceiling)
            except PrecisionExhausted:
                break
        return False  # persistent overlap: tie


class StaticL2Comparator:
    """L2 comparison over a fixed vertex->point table (no precision retries).

    Used when points come from oblivious coordinate decoding rather than a
    live embedding; undecided comparisons count as ties.
    """

    name = "l2"

    def __init__(self, points):
        self.points = points

    def value(self, u, t):
        return distance(self.points[u], self.points[t])

    def compare_neighbors(self, u, w, t):
        return self.value(u, t).strictly_less(self.value(w, t)) is True


@dataclass
class RouteTrace:
    source: int
    dest: int
    comparator: str
    hops: list  # vertex ids, source first
    values: list  # comparator value at each hop
    distances: list = field(default_factory=list)  # L2 decimals when audited
    outcome: str = "delivered"  # "delivered" | "stuck" | "hop_limit"

    @property
    def delivered(self):
        return self.outcome == "delivered"

    @property
    def hop_count(self):
        return len(self.hops) - 1

    def records(self):
        out = []
        for i, v in enumerate(self.hops):
            rec = {"vertex": v, "D": _plain(self.values[i])}
            if self.distances:
                rec["distance"] = self.distances[i]
            out.append(rec)
        return out

    def to_json_lines(self):
        return "\n".join(json.dumps(rec) for rec in self.records())


def _plain(value):
    return value if isinstance(value, int) else value.decimal()


def next_hop(adjacency, current, target, comparator):
    """The neighbor strictly improving the comparator value; lowest id wins ties."""
    if hasattr(comparator, "compare_neighbors"):
        closer = lambda u, w: comparator.compare_neighbors(u, w, target)
    else:
        vals = {u: comparator.value(u, target) for u in adjacency[current]}
        vals[current] = comparator.value(current, target)
        closer = lambda u, w: comparator.less(vals[u], vals[w])
    best = None
    for u in sorted(adjacency[current]):
        if best is None or closer(u, best):
            best = u
    if best is None or not closer(best, current):
        raise Stuck("vertex %d has no neighbor closer to %d" % (current, target))
    return best


def route(adjacency, source, dest, comparator, hop_limit=None, audit=None):
    """Greedy route from source to dest; raises on stuck / hop-limit outcomes.

    `audit`, if given, is a vertex->point map used to record per-hop L2
    distances in the trace.
    """
    if hop_limit is None:
        hop_limit = 4 * len(adjacency) + 16
    if hop_limit < 1:
        raise ValueError("hop_limit must be >= 1")
    trace = RouteTrace(source, dest, comparator.name, [source],
                       [comparator.value(source, dest)])
    if audit is not None:
        trace.distances.append(distance(audit[source], audit[dest]).decimal())
    cur = source
    while cur != dest:
        if trace.hop_count >= hop_limit:
            trace.outcome = "hop_limit"
            raise HopLimitExceeded(
                "no delivery from %d to %d within %d hops" % (source, dest, hop_limit),
                trace)
        try:
            cur = next_hop(adjacency, cur, dest, comparator)
        except Stuck:
            trace.outcome = "stuck"
            raise
        trace.hops.append(cur)
        trace.values.append(comparator.value(cur, dest))
        if audit is not None:
            trace.distances.append(distance(audit[cur], audit[dest]).decimal())
    return trace
