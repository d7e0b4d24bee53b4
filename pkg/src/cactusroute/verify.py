"""Independent audits of everything the construction promises.

Every check here recomputes its quantity from raw data -- interval points,
exhaustive pair minima, freshly sampled geometry -- rather than trusting
the formulas in the modules under audit.  A failure is only counted when
the violating comparison is *decided* at the working precision, so exact
boundary cases (equal distances in symmetric embeddings, angles exactly at
the schedule's bound) never produce false alarms.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coords import encode
from .numerics import IntervalContext, distance, hypot
from .schedule import ConstraintViolated, Lemma1Instance, lemma1_margin


@dataclass
class AuditCheck:
    name: str
    population: int
    failures: int
    worst_margin: object = None  # float, scale-free units; None when n/a
    notes: str = ""

    def to_jsonable(self):
        return {
            "name": self.name,
            "population": self.population,
            "failures": self.failures,
            "worst_margin": self.worst_margin,
            "notes": self.notes,
        }


@dataclass
class AuditReport:
    checks: list = field(default_factory=list)

    @property
    def verdict(self):
        return "pass" if all(c.failures == 0 for c in self.checks) else "fail"

    def add(self, check):
        self.checks.append(check)
        return self

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    def to_jsonable(self):
        return {"verdict": self.verdict,
                "checks": [c.to_jsonable() for c in self.checks]}

    def text(self):
        lines = []
        for c in self.checks:
            mark = "ok  " if c.failures == 0 else "FAIL"
            margin = "" if c.worst_margin is None else "  worst %.3g" % c.worst_margin
            note = ("  (%s)" % c.notes) if c.notes else ""
            lines.append("%s %-28s %d/%d%s%s"
                         % (mark, c.name, c.failures, c.population, margin, note))
        lines.append("verdict: %s" % self.verdict)
        return "\n".join(lines)


def _ratio(num, den):
    """num/den as a float for reporting; tolerates huge exponents."""
    try:
        return float(num / den)
    except (OverflowError, ZeroDivisionError):
        return math.inf


# ---------------------------------------------------------------------------
# Greedy soundness
# ---------------------------------------------------------------------------


def _adjacency(vertices, edges):
    adj = {v: [] for v in vertices}
    for e in edges:
        a, b = sorted(e)
        if a in adj and b in adj:
            adj[a].append(b)
            adj[b].append(a)
    return adj


def check_greedy(embedding, points=None, prec=None, ceiling=None, name="greedy"):
    """All ordered pairs (s, t) must have a neighbor certifiably closer to t.

    `points` may override the embedding's own realization (used by the
    negative-control tests, which perturb one vertex).
    """
    pts = points if points is not None else embedding.realize(prec=prec, ceiling=ceiling)
    vertices = [v for v in embedding.vertices if v in pts]
    adj = _adjacency(vertices, embedding.edges())
    sched = embedding.schedule(prec=prec, ceiling=ceiling)
    eps_min = sched.eps[-1] if sched.eps else sched.delta[0]
    population = failures = 0
    worst = None
    for t in vertices:
        dist_t = {v: distance(pts[v], pts[t]) for v in vertices}
        for s in vertices:
            if s == t:
                continue
            population += 1
            best_gap = None
            for u in adj[s]:
                gap = dist_t[s] - dist_t[u]
                if best_gap is None or best_gap.lo < gap.lo:
                    best_gap = gap
            if best_gap is None or best_gap.strictly_positive() is not True:
                failures += 1
            else:
                m = _ratio(best_gap.lo, eps_min.lo)
                worst = m if worst is None else min(worst, m)
    return AuditReport().add(AuditCheck(name, population, failures, worst,
                                        "margins in units of eps_min"))


def perturb_radially(points, vertex, amount):
    """Copy of `points` with one vertex pushed outward by relative `amount`."""
    out = dict(points)
    x, y = out[vertex]
    out[vertex] = (x * (1 + amount), y * (1 + amount))
    return out


# ---------------------------------------------------------------------------
# Schedule underestimates
# ---------------------------------------------------------------------------


def _ray_signatures(modified):
    """Angular identity of every placed vertex: equal signature = same ray."""
    place = modified.placement()
    sig = {}
    for cyc in modified.cycles:
        for v, q in cyc.positions.items():
            if cyc.primary is None:
                sig[v] = ((0, q),)
            else:
                base = sig[cyc.primary]
                sig[v] = base + ((cyc.depth, q),) if q else base
    return sig


def audit_underestimates(embedding, prec=None, ceiling=None):
    """Measured delta(G'_i) >= delta_i and beta(G'_i) >= beta_i per level.

    Both minima are measured exhaustively from the interval points of the
    level-i prefix of the modified embedding, never from the schedule's own
    recurrences; a level fails only on a decided violation.
    """
    modified = embedding.modified
    sched = embedding.schedule(prec=prec, ceiling=ceiling)
    pts = embedding.realize(prec=prec, ceiling=ceiling)
    if embedding.keep is not None:
        raise ValueError("audit the full modified embedding, not a collapsed one")
    level = embedding.level
    sig = _ray_signatures(modified)
    edges = modified.all_edges()
    report = AuditReport()
    depth = embedding.depth
    d_pop = d_fail = b_pop = b_fail = 0
    d_worst = b_worst = None
    for i in range(depth + 1):
        vs = [v for v in sorted(level) if level[v] <= i]
        adj = _adjacency(vs, edges)
        delta_i, beta_i = sched.delta[i], sched.beta[i]
        cos_beta_i = beta_i.cos()
        for t in vs:
            dist_t = {v: distance(pts[v], pts[t]) for v in vs}
            for s in vs:
                if s == t:
                    continue
                d_pop += 1
                gap = None
                for u in adj[s]:
                    g = dist_t[s] - dist_t[u]
                    if gap is None or gap.lo < g.lo:
                        gap = g
                if gap is None or gap.strictly_less(delta_i) is True:
                    d_fail += 1
                else:
                    m = _ratio(gap.lo, delta_i.hi)
                    d_worst = m if d_worst is None else min(d_worst, m)
        norms = {v: hypot(pts[v][0], pts[v][1]) for v in vs}
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                u, v = vs[a], vs[b]
                if sig[u] == sig[v]:
                    continue  # same ray: zero angle, excluded by definition
                b_pop += 1
                pu, pv = pts[u], pts[v]
                cos_ang = (pu[0] * pv[0] + pu[1] * pv[1]) / (norms[u] * norms[v])
                if cos_beta_i.strictly_less(cos_ang) is True:
                    b_fail += 1
                else:
                    m = _ratio(cos_beta_i.hi - cos_ang.lo, cos_beta_i.hi.__abs__() + 1)
                    b_worst = m if b_worst is None else min(b_worst, m)
    report.add(AuditCheck("delta underestimates", d_pop, d_fail, d_worst,
                          "per-pair margin over delta_i"))
    report.add(AuditCheck("beta underestimates", b_pop, b_fail, b_worst,
                          "cosine slack, normalized"))
    return report


# ---------------------------------------------------------------------------
# Lemma 1 sampling
# ---------------------------------------------------------------------------


def _rational(rng, lo, hi, denom=10 ** 6):
    a = Fraction(lo).limit_denominator(denom)
    b = Fraction(hi).limit_denominator(denom)
    return a + (b - a) * Fraction(rng.randrange(1, denom), denom)


def sample_lemma1(count, seed=0, prec=256):
    """Random constraint-satisfying Lemma 1 instances; margin >= eps^2 each."""
    rng = random.Random(seed)
    ctx = IntervalContext(prec)
    population = failures = rejected = 0
    worst = None
    while population < count:
        beta = _rational(rng, 1e-3, 1.5)
        eps_cap = (1 - math.cos(float(beta))) / 6
        eps = _rational(rng, 0, eps_cap * 0.999)
        if eps <= 0:
            continue
        sin_cap = float(eps) * (1 - math.cos(float(beta))) / (2 * (1 + float(eps)))
        alpha = _rational(rng, 0, math.asin(min(1.0, sin_cap)) * 0.999)
        if alpha <= 0:
            continue
        z = _rational(rng, 0, float(eps))
        inst = Lemma1Instance(alpha, beta, eps, z)
        try:
            margin = lemma1_margin(inst, ctx)
        except ConstraintViolated:
            rejected += 1
            continue
        population += 1
        eps_sq = ctx.from_fraction(eps * eps)
        if margin.strictly_less(eps_sq) is True:
            failures += 1
        else:
            m = _ratio(margin.lo, eps_sq.hi)
            worst = m if worst is None else min(worst, m)
    return AuditReport().add(AuditCheck(
        "lemma1 margins", population, failures, worst,
        "margin/eps^2; %d rejected draws" % rejected))


# ---------------------------------------------------------------------------
# Coordinate bit budgets
# ---------------------------------------------------------------------------


def audit_bits(coords, params, budget=None):
    """Max serialized coordinate length against its asymptotic budget.

    The default budgets are deliberately loose constants over the variants'
    theoretical shapes -- c'*log2(n) for optimal, c''*log2(n)^2 for log2 --
    so the audit flags regressions, not constant-factor noise.
    """
    log_n = max(1.0, math.log2(params.n))
    max_bits = max(len(encode(c)) for c in coords.values())
    if params.variant == "optimal":
        measured = max_bits / log_n
        bound = budget if budget is not None else 16 * (params.c + 2) * log_n + 64
        notes = "measured c' = %.2f" % measured
    else:
        measured = max_bits / log_n ** 2
        bound = budget if budget is not None else 8 * log_n ** 2 + 8 * log_n + 32
        notes = "measured c'' = %.2f" % measured
    fail = 0 if max_bits <= bound else 1
    return AuditReport().add(AuditCheck(
        "bit budget (%s)" % params.variant, len(coords), fail,
        bound - max_bits, "%s; max %d bits, budget %.0f" % (notes, max_bits, bound)))
