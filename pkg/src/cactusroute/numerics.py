"""Adaptive-precision interval arithmetic on top of MPFR (via gmpy2).

The embedding construction produces quantities that shrink extremely fast
with the level index, so fixed-width floats are useless beyond shallow
depths.  All geometric computation in this package goes through `Interval`,
a closed interval [lo, hi] whose endpoints are MPFR floats rounded outward.
A comparison between two intervals is *decided* only when the intervals are
disjoint; callers that need a decision re-run their computation at doubled
precision (see `adaptive`) until it is decided or the precision ceiling is
reached.
"""

from __future__ import annotations

import os
from fractions import Fraction

import gmpy2

DEFAULT_PRECISION_FLOOR = int(os.environ.get("CACTUS_PRECISION_FLOOR", "128"))
DEFAULT_PRECISION_CEILING = int(os.environ.get("CACTUS_PRECISION_CEILING", str(1 << 18)))


class PrecisionExhausted(Exception):
    """Raised when a comparison is still undecided at the precision ceiling."""

    def __init__(self, message, required_estimate=None):
        super().__init__(message)
        self.required_estimate = required_estimate


def _contexts(prec):
    down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    for c in (down, up):
        c.emin = gmpy2.get_emin_min()
        c.emax = gmpy2.get_emax_max()
    return down, up


class IntervalContext:
    """Factory for intervals sharing one working precision."""

    def __init__(self, prec):
        if prec < 8:
            raise ValueError("precision must be at least 8 bits")
        self.prec = prec
        self._down, self._up = _contexts(prec)

    # -- constructors ------------------------------------------------------

    def exact(self, x):
        """Interval for a value representable exactly (int, small float)."""
        v = gmpy2.mpfr(x, context=self._down)
        return Interval(self, v, v)

    def from_fraction(self, fr):
        if isinstance(fr, int):
            return self.exact(fr)
        fr = Fraction(fr)
        lo = gmpy2.mpfr(fr, context=self._down)
        hi = gmpy2.mpfr(fr, context=self._up)
        return Interval(self, lo, hi)

    def from_float_string(self, s):
        lo = gmpy2.mpfr(s, context=self._down)
        hi = gmpy2.mpfr(s, context=self._up)
        return Interval(self, lo, hi)

    def pi(self):
        return Interval(self, self._down.const_pi(), self._up.const_pi())

    # -- helpers used by Interval -----------------------------------------

    def _iv(self, lo, hi):
        return Interval(self, lo, hi)


class Interval:
    """Closed interval with outward-rounded MPFR endpoints.

    Doubles as the artifact's "precision real": `midpoint` is the value and
    `width` bounds the accumulated rounding error.
    """

    __slots__ = ("ctx", "lo", "hi")

    def __init__(self, ctx, lo, hi):
        self.ctx = ctx
        self.lo = lo
        self.hi = hi
        if lo > hi:
            raise ValueError("inverted interval [%s, %s]" % (lo, hi))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        c = self.ctx
        return c._iv(c._down.add(self.lo, o.lo), c._up.add(self.hi, o.hi))

    def __sub__(self, other):
        o = self._coerce(other)
        c = self.ctx
        return c._iv(c._down.sub(self.lo, o.hi), c._up.sub(self.hi, o.lo))

    def __neg__(self):
        c = self.ctx
        return c._iv(c._down.minus(self.hi), c._up.minus(self.lo))

    def __mul__(self, other):
        o = self._coerce(other)
        c = self.ctx
        los = [c._down.mul(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        his = [c._up.mul(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return c._iv(min(los), max(his))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval divisor straddles zero")
        c = self.ctx
        los = [c._down.div(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        his = [c._up.div(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return c._iv(min(los), max(his))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._coerce(other) - self

    def _coerce(self, other):
        if isinstance(other, Interval):
            if other.ctx.prec != self.ctx.prec:
                raise ValueError("mixing intervals of different precision")
            return other
        return self.ctx.exact(other)

    # -- elementary functions (domain-restricted to what the artifact uses)

    def square(self):
        """Tight square: never dips below zero for intervals straddling 0.

        Raw endpoint arithmetic must go through the context methods --
        Python operators on mpfr objects round at the *global* context's
        53-bit precision.
        """
        c = self.ctx
        neg_hi = c._down.minus(self.hi)  # negation at full precision (exact)
        neg_lo = c._up.minus(self.lo)
        lo_abs = max(self.lo, neg_hi)  # could be negative when 0 inside
        if lo_abs < 0:
            lo = gmpy2.mpfr(0)
        else:
            lo = c._down.mul(lo_abs, lo_abs)
        hi_abs = max(self.hi, neg_lo)
        hi = c._up.mul(hi_abs, hi_abs)
        return c._iv(lo, hi)

    def sqrt(self):
        if self.lo < 0:
            raise ValueError("sqrt of interval reaching below zero")
        c = self.ctx
        return c._iv(c._down.sqrt(self.lo), c._up.sqrt(self.hi))

    def cos(self):
        """Cosine, valid for intervals inside [0, pi] (where cos decreases)."""
        c = self.ctx
        if self.lo < 0 or self.hi > c._up.const_pi():
            raise ValueError("cos restricted to [0, pi]")
        return c._iv(c._down.cos(self.hi), c._up.cos(self.lo))

    def sin(self):
        """Sine, valid for intervals inside [0, pi]."""
        c = self.ctx
        half_pi_lo = c._down.div(c._down.const_pi(), gmpy2.mpfr(2))
        half_pi_hi = c._up.div(c._up.const_pi(), gmpy2.mpfr(2))
        if self.lo < 0 or self.hi > c._up.const_pi():
            raise ValueError("sin restricted to [0, pi]")
        lo = min(c._down.sin(self.lo), c._down.sin(self.hi))
        if self.lo <= half_pi_hi and self.hi >= half_pi_lo:
            hi = gmpy2.mpfr(1)
        else:
            hi = max(c._up.sin(self.lo), c._up.sin(self.hi))
        return c._iv(lo, hi)

    def asin(self):
        if self.lo < 0 or self.hi > 1:
            raise ValueError("asin restricted to [0, 1]")
        c = self.ctx
        return c._iv(c._down.asin(self.lo), c._up.asin(self.hi))

    def min(self, other):
        o = self._coerce(other)
        c = self.ctx
        return c._iv(min(self.lo, o.lo), min(self.hi, o.hi))

    def max(self, other):
        o = self._coerce(other)
        c = self.ctx
        return c._iv(max(self.lo, o.lo), max(self.hi, o.hi))

    # -- queries -----------------------------------------------------------

    @property
    def midpoint(self):
        c = self.ctx
        return c._down.div(c._down.add(self.lo, self.hi), gmpy2.mpfr(2))

    @property
    def width(self):
        return self.ctx._up.sub(self.hi, self.lo)

    def strictly_less(self, other):
        """True / False when decided, None when the intervals overlap."""
        o = self._coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None

    def strictly_positive(self):
        if self.lo > 0:
            return True
        if self.hi <= 0:
            return False
        return None

    def __contains__(self, x):
        return self.lo <= x <= self.hi

    def __repr__(self):
        return "Interval[%s, %s]" % (self.lo, self.hi)

    def decimal(self, digits=30):
        """Decimal string of the midpoint, for export."""
        return self.midpoint.__format__(".%dg" % digits)


def hypot(dx, dy):
    return (dx.square() + dy.square()).sqrt()


def distance(p, q):
    return hypot(p[0] - q[0], p[1] - q[1])


def adaptive(compute, floor=None, ceiling=None, what="comparison"):
    """Run `compute(ctx)` at doubling precision until it returns non-None.

    `compute` receives an `IntervalContext` and returns None to request more
    precision.  Raises `PrecisionExhausted` past the ceiling.
    """
    prec = floor if floor is not None else DEFAULT_PRECISION_FLOOR
    ceiling = ceiling if ceiling is not None else DEFAULT_PRECISION_CEILING
    if prec > ceiling:
        raise PrecisionExhausted(
            "%s needs more than %d bits" % (what, ceiling), required_estimate=prec
        )
    while True:
        result = compute(IntervalContext(prec))
        if result is not None:
            return result
        if prec >= ceiling:
            raise PrecisionExhausted(
                "%s undecided at %d bits (ceiling)" % (what, prec),
                required_estimate=2 * prec,
            )
        prec = min(2 * prec, ceiling)
