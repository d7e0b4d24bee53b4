"""The topology-free embedding schedule: radii and angle/margin ledger.

Level 0 starts from the closed forms
    delta_0 = 2 - sqrt(2 + 2 cos(pi/P)),   beta_0 = pi/P
(P = positions per arc), and each level advances by the inductive update

    eps_i     = min(delta_i/3, R_i (1 - cos(2 beta_i / 3)) / 6)
    R_{i+1}   = R_i + eps_i
    delta1_i  = min(delta_i/3, sqrt(R_{i+1}^2 + eps_i^2) - R_{i+1})
    beta1_i   = beta_i
    alpha_i   = min(beta1_i/3, delta1_i/(3 R_{i+1}), asin(bound))
                with sin(alpha) <= eps_i (1 - cos(2 beta1_i/3)) / (2(1+eps_i))
    beta_{i+1} = alpha_i / (P - 1)
    delta_{i+1} = min(delta1_i/3, left/right-edge candidate, down-edge candidate)

The two delta candidates instantiate the extremal hypothetical target of the
"closest to the perpendicular bisector, farthest from the line" argument:
the sector-corner point on the radius-1 semi-circle translated R_{i+1}+2
along the bisector (left/right edges), and the primary node translated
2 R_{i+1} off the down edge.  Both are conservative underestimates and are
independently audited against brute-force delta measurements.

Everything is computed in outward-rounded interval arithmetic; a level whose
required sign or accuracy tests stay undecided triggers precision doubling.
The quantities shrink doubly exponentially with depth (each level roughly
quadruples the number of significant bits needed), so a cheap a-priori
estimate refuses depths whose cost would exceed the precision ceiling.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2

from .numerics import (
    DEFAULT_PRECISION_CEILING,
    DEFAULT_PRECISION_FLOOR,
    Interval,
    IntervalContext,
    PrecisionExhausted,
    distance,
)


class ConstraintViolated(Exception):
    pass


class DegenerateSegment(Exception):
    pass


@dataclass
class EmbeddingSchedule:
    n: int
    variant: str
    levels_per_super: int
    positions_per_arc: int
    depth_levels: int
    precision: int
    R: list  # Interval, indices 0..depth_levels
    delta: list  # indices 0..depth_levels
    beta: list  # indices 0..depth_levels
    eps: list  # indices 0..depth_levels-1
    delta1: list
    beta1: list
    alpha: list

    def to_jsonable(self, digits=30):
        def render(seq):
            return [x.decimal(digits) for x in seq]

        return {
            "n": self.n,
            "variant": self.variant,
            "depth_levels": self.depth_levels,
            "precision": self.precision,
            "R": render(self.R),
            "delta": render(self.delta),
            "beta": render(self.beta),
            "eps": render(self.eps),
            "delta1": render(self.delta1),
            "beta1": render(self.beta1),
            "alpha": render(self.alpha),
        }


def initial_underestimates(n, ctx, positions_per_arc=None):
    """(delta_0, beta_0) for the given arc resolution (2n+1 by default)."""
    if n < 2:
        raise ValueError("need n >= 2")
    P = positions_per_arc if positions_per_arc is not None else 2 * n + 1
    pi = ctx.pi()
    beta0 = pi / P
    delta0 = ctx.exact(2) - (ctx.exact(2) + ctx.exact(2) * beta0.cos()).sqrt()
    return delta0, beta0


def _perp_unit(s, u):
    """Unit vector perpendicular to segment su (interval arithmetic)."""
    dx, dy = u[0] - s[0], u[1] - s[1]
    norm = (dx * dx + dy * dy).sqrt()
    return (-dy / norm, dx / norm)


def min_delta_candidate(s, u, t0, shift, direction=None):
    """Delta value d(s,t*) - d(u,t*) for the extremal hypothetical target.

    t* is t0 translated `shift` units perpendicular to su (the direction of
    the perpendicular bisector).  With direction=None both ways are tried
    and the smaller delta value is returned, which is always conservative.
    """
    dx, dy = u[0] - s[0], u[1] - s[1]
    if (dx * dx + dy * dy).strictly_positive() is not True:
        raise DegenerateSegment("s and u coincide (or are undecidably close)")
    w = _perp_unit(s, u)
    dirs = [direction] if direction is not None else [1, -1]
    best = None
    for sign in dirs:
        t = (t0[0] + w[0] * (sign * shift), t0[1] + w[1] * (sign * shift))
        margin = distance(s, t) - distance(u, t)
        best = margin if best is None else best.min(margin)
    return best


def estimate_required_bits(params, depth_levels):
    """Cheap lower bound on the working precision the schedule will need.

    The significant-bit requirement empirically quadruples per level
    (the delta/alpha recurrences compose two squarings); this deliberately
    under-estimates so that feasible requests are never refused.
    """
    if depth_levels <= 1:
        return 64
    return 4 ** (depth_levels - 2) * max(4, params.positions_per_arc.bit_length())


def _accurate(x):
    """Positive and known to a relative width of 1/4."""
    if x.strictly_positive() is not True:
        return False
    width4 = x.ctx._up.mul(x.ctx._up.sub(x.hi, x.lo), gmpy2.mpfr(4))
    return width4 < x.lo


def _schedule_once(ctx, params, depth_levels):
    """One full ledger at a fixed precision; None if anything is undecided."""
    P = params.positions_per_arc
    pi = ctx.pi()
    half_pi = pi / 2
    delta0, beta0 = initial_underestimates(params.n, ctx, P)
    R = [ctx.exact(1)]
    delta, beta = [delta0], [beta0]
    eps_l, delta1_l, beta1_l, alpha_l = [], [], [], []
    if not (_accurate(delta0) and _accurate(beta0)):
        return None
    for i in range(depth_levels):
        eps = (delta[i] / 3).min(R[i] * (1 - (beta[i] * 2 / 3).cos()) / 6)
        if not _accurate(eps):
            return None
        r_next = R[i] + eps
        delta1 = (delta[i] / 3).min((r_next * r_next + eps * eps).sqrt() - r_next)
        beta1 = beta[i]
        sin_bound = eps * (1 - (beta1 * 2 / 3).cos()) / ((1 + eps) * 2)
        if not _accurate(delta1) or not _accurate(sin_bound):
            return None
        alpha = (beta1 / 3).min(delta1 / (3 * r_next)).min(sin_bound.asin())
        if not _accurate(alpha):
            return None
        if alpha.strictly_less(half_pi) is not True:
            return None
        beta_next = alpha / (P - 1)
        # delta candidates ---------------------------------------------------
        cand_a = delta1 / 3
        # left/right edges: s,u on the new semi-circle at minimal separation,
        # extremal target at the sector corner on the radius-1 semi-circle,
        # translated R_{i+1}+2 along the bisector.
        hb = beta_next / 2
        s_lr = (r_next * (-(hb.sin())), r_next * hb.cos())
        u_lr = (r_next * hb.sin(), r_next * hb.cos())
        t_lr = (hb.sin(), hb.cos())
        cand_b = min_delta_candidate(s_lr, u_lr, t_lr, r_next + 2)
        # down edge: s the clockwise-most cycle vertex, u the primary node,
        # extremal target at u translated 2 R_{i+1} off the edge.
        s_dn = (r_next * alpha.sin(), r_next * alpha.cos())
        u_dn = (ctx.exact(0), R[i])
        cand_c = min_delta_candidate(s_dn, u_dn, u_dn, 2 * r_next)
        delta_next = cand_a.min(cand_b).min(cand_c)
        if not _accurate(delta_next) or not _accurate(beta_next):
            return None
        R.append(r_next)
        delta.append(delta_next)
        beta.append(beta_next)
        eps_l.append(eps)
        delta1_l.append(delta1)
        beta1_l.append(beta1)
        alpha_l.append(alpha)
    return EmbeddingSchedule(params.n, params.variant, params.levels_per_super,
                             P, depth_levels, ctx.prec, R, delta, beta,
                             eps_l, delta1_l, beta1_l, alpha_l)


_cache = {}
_undecidable = {}  # (n, variant, c, ceiling) -> shallowest depth known to fail


def compute_schedule(params, depth_levels, prec=None, floor=None, ceiling=None):
    """The ledger for levels 0..depth_levels, at adaptively chosen precision.

    With `prec` given, computes at exactly that precision (no retry).
    Raises PrecisionExhausted when the ceiling cannot decide every level,
    or -- cheaply, up front -- when the a-priori estimate already exceeds it.
    Failures at the ceiling are remembered: a depth known to be undecidable
    (and every deeper one) is refused without redoing the precision ladder.
    """
    if depth_levels < 1:
        raise ValueError("need depth_levels >= 1")
    ceiling = ceiling if ceiling is not None else DEFAULT_PRECISION_CEILING
    key = (params.n, params.variant, params.c, depth_levels, prec)
    if key in _cache:
        return _cache[key]
    neg_key = (params.n, params.variant, params.c, ceiling)
    if depth_levels >= _undecidable.get(neg_key, depth_levels + 1):
        raise PrecisionExhausted(
            "schedule to depth %d known undecidable at the %d-bit ceiling"
            % (depth_levels, ceiling),
            required_estimate=2 * ceiling,
        )
    need = estimate_required_bits(params, depth_levels)
    if need > ceiling:
        raise PrecisionExhausted(
            "schedule to depth %d needs roughly %d bits, over the %d-bit ceiling"
            % (depth_levels, need, ceiling),
            required_estimate=need,
        )
    if prec is not None:
        if prec > ceiling:
            raise PrecisionExhausted(
                "requested %d bits over the %d-bit ceiling" % (prec, ceiling),
                required_estimate=prec,
            )
        sched = _schedule_once(IntervalContext(prec), params, depth_levels)
        if sched is None:
            raise PrecisionExhausted(
                "schedule undecided at the requested %d bits" % prec,
                required_estimate=2 * prec,
            )
        _cache[key] = sched
        return sched
    p = max(floor if floor is not None else DEFAULT_PRECISION_FLOOR, need)
    while True:
        sched = _schedule_once(IntervalContext(p), params, depth_levels)
        if sched is not None:
            _cache[key] = sched
            return sched
        if p >= ceiling:
            prior = _undecidable.get(neg_key)
            if prior is None or depth_levels < prior:
                _undecidable[neg_key] = depth_levels
            raise PrecisionExhausted(
                "schedule to depth %d undecided at the %d-bit ceiling"
                % (depth_levels, ceiling),
                required_estimate=2 * p,
            )
        p = min(2 * p, ceiling)


# ---------------------------------------------------------------------------
# Lemma 1 (the geometric workhorse behind subphase 2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Lemma1Instance:
    """Exact parameters, evaluated at any interval precision.

    Each field is a Fraction, or ("pi", q) meaning q*pi, or ("asin", q)
    meaning asin(q) -- the symbolic forms let boundary cases like
    beta = pi/2 be expressed exactly.
    """

    alpha: object
    beta: object
    eps: object
    z: object


def _param_interval(ctx, val):
    if isinstance(val, tuple):
        tag, q = val
        if tag == "pi":
            return ctx.pi() * ctx.from_fraction(q)
        if tag == "asin":
            return ctx.from_fraction(q).asin()
        raise ValueError("unknown parameter form %r" % (tag,))
    return ctx.from_fraction(val)


def _param_float(val):
    import math

    if isinstance(val, tuple):
        tag, q = val
        return math.pi * float(q) if tag == "pi" else math.asin(float(q))
    return float(val)


def _check_constraints(inst, ctx):
    # plain-number constraints checked directly, transcendental ones by
    # interval (a check is violated only when the comparison is a decided
    # failure, so boundary cases like sin(alpha) = bound are accepted)
    fa, fb = _param_float(inst.alpha), _param_float(inst.beta)
    fe, fz = _param_float(inst.eps), _param_float(inst.z)
    if not (0 < fa <= 1.6 and 0 < fb <= 1.6 and fe > 0 and 0 <= fz <= fe):
        raise ConstraintViolated("Lemma 1 hypothesis not satisfied: %r" % (inst,))
    alpha = _param_interval(ctx, inst.alpha)
    beta = _param_interval(ctx, inst.beta)
    eps = _param_interval(ctx, inst.eps)
    z = _param_interval(ctx, inst.z)
    half_pi = ctx.pi() / 2
    checks = [
        alpha.strictly_less(half_pi) is not False,
        beta.strictly_less(half_pi) is not False,
        eps.strictly_less((1 - beta.cos()) / 6) is not False,
        alpha.sin().strictly_less(eps * (1 - beta.cos()) / ((1 + eps) * 2))
        is not False,
    ]
    if not all(checks):
        raise ConstraintViolated("Lemma 1 hypothesis not satisfied: %r" % (inst,))
    return alpha, beta, eps, z


def lemma1_margin(inst, ctx):
    """d(a,c) - d(b,c) for the Lemma 1 points; guaranteed >= eps^2."""
    alpha, beta, eps, z = _check_constraints(inst, ctx)
    c = (ctx.exact(0), 1 + z)
    b = (-(beta.sin()), beta.cos())
    ba = beta - alpha
    a = (-((1 + eps) * ba.sin()), (1 + eps) * ba.cos())
    return distance(a, c) - distance(b, c)
