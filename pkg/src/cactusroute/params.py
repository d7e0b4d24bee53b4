"""Global embedding parameters shared by every stage.

Everything here is a function of (n, variant, c) only, never of topology:
that is what makes the coordinate system oblivious.

variant "log2":   one heavy path per block of n levels, 2n+1 angular
                  positions per arc, turnpike reserved at position n.
variant "optimal": levels and positions are in-order ranks in full binary
                  trees sized for the weight-balanced codes; the turnpike
                  rank is the rank of the fixed left-right path.
"""

from __future__ import annotations

from dataclasses import dataclass

VARIANTS = ("log2", "optimal")


@dataclass(frozen=True)
class EmbedParams:
    n: int
    variant: str
    c: int = 2  # published depth constant of the weight-balanced trees

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if self.variant not in VARIANTS:
            raise ValueError("unknown variant %r" % self.variant)

    @property
    def log_n(self):
        """ceil(log2 n)."""
        return (self.n - 1).bit_length()

    @property
    def level_tree_height(self):
        """Full-binary-tree height used to interpret level codes."""
        return self.c * self.log_n + self.c

    @property
    def cycle_tree_height(self):
        """Level-tree height plus the two structural levels of the cycle tree."""
        return self.level_tree_height + 2

    @property
    def levels_per_super(self):
        """Number of levels in one super-level period."""
        if self.variant == "log2":
            return self.n
        return (1 << (self.level_tree_height + 1)) - 1

    @property
    def positions_per_arc(self):
        """Angular positions available on one cycle arc (and the root arc)."""
        if self.variant == "log2":
            return 2 * self.n + 1
        return (1 << (self.cycle_tree_height + 1)) - 1

    @property
    def turnpike_rank(self):
        """The reserved angular position every turnpike occupies."""
        if self.variant == "log2":
            return self.n
        return 3 * (1 << (self.cycle_tree_height - 2)) - 1

    @property
    def root_divisor(self):
        """The root semi-circle is split into this many equal arcs."""
        return self.positions_per_arc

    @property
    def arc_divisor(self):
        """Deeper arcs place position q at fraction q/arc_divisor of the arc."""
        return self.positions_per_arc - 1
