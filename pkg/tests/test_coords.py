import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cactusroute.coords import (Coordinate, IncompatibleParams, LevelCyclePair,
                                MalformedBits, assign_coordinates, compare_D,
                                decode, decode_walk, encode, rank_to_path,
                                to_euclidean)
from cactusroute.corpus import exhaustive_cacti
from cactusroute.decompose import inorder_rank
from cactusroute.embed import embed
from cactusroute.params import EmbedParams

from conftest import BRIDGE_SQUARE, K2, Built, g


def all_coords(n_max, variant):
    for n in range(2, n_max + 1):
        for graph in exhaustive_cacti(n):
            b = Built(graph, variant)
            yield b, assign_coordinates(b.modified)


# -- structure --------------------------------------------------------------


def test_root_vertex_single_pair():
    b = Built(K2, "log2")
    coords = assign_coordinates(b.modified)
    for v in (0, 1):
        assert len(coords[v].pairs) == 1
        assert coords[v].root_level == 0
        assert coords[v].depth == 0


def test_depth_matches_embedding():
    for variant in ("log2", "optimal"):
        for b, coords in all_coords(6, variant):
            e = embed(b.modified)
            for v, coord in coords.items():
                assert coord.depth == e.level[v]
                assert coord.cycle == e.rank[v]


def test_coordinates_unique_per_graph():
    for variant in ("log2", "optimal"):
        for b, coords in all_coords(7, variant):
            seen = set(coords.values())
            assert len(seen) == b.graph.vertex_count


def test_validation_rejects_bad_fields():
    p = EmbedParams(3, "log2")
    with pytest.raises(ValueError):
        Coordinate((), 0, p)
    with pytest.raises(ValueError):
        Coordinate((LevelCyclePair(p.levels_per_super, 0),), 0, p)
    with pytest.raises(ValueError):
        Coordinate((LevelCyclePair(0, p.positions_per_arc),), 0, p)
    with pytest.raises(ValueError):
        Coordinate((LevelCyclePair(0, 0),), 1, p)  # root below first pair


# -- decode walk ------------------------------------------------------------


def test_decode_walk_matches_modified_chain():
    # the walk reconstructed from the coordinate alone must equal the actual
    # (depth, rank) chain of primaries above the vertex in the modified graph
    for variant in ("log2", "optimal"):
        for b, coords in all_coords(6, variant):
            e = embed(b.modified)
            placement = b.modified.placement()
            for v, coord in coords.items():
                walk = decode_walk(coord)
                assert walk[-1] == (e.level[v], e.rank[v])
                # climb the real chain: cycle of v, then parents up to root
                ci = placement[v][0]
                chain = []
                cur, rank_v = ci, e.rank[v]
                chain.append((b.modified.cycles[cur].depth, rank_v))
                while b.modified.cycles[cur].parent_idx is not None:
                    c = b.modified.cycles[cur]
                    par = b.modified.cycles[c.parent_idx]
                    chain.append((par.depth, par.positions[c.primary]))
                    cur = c.parent_idx
                assert walk == list(reversed(chain))


# -- geometry ---------------------------------------------------------------


def test_to_euclidean_matches_realize_bit_for_bit():
    for n in range(2, 6):
        for graph in exhaustive_cacti(n):
            b = Built(graph, "log2")
            e = embed(b.modified)
            sched = e.schedule()
            pts = e.realize()
            coords = assign_coordinates(b.modified)
            for v in range(n):
                x, y = to_euclidean(coords[v], prec=sched.precision)
                assert x.lo == pts[v][0].lo and x.hi == pts[v][0].hi
                assert y.lo == pts[v][1].lo and y.hi == pts[v][1].hi


# -- codec ------------------------------------------------------------------


def test_rank_to_path_inverts_inorder_rank():
    for h in range(1, 7):
        for rank in range(2 ** (h + 1) - 1):
            path = rank_to_path(rank, h)
            assert inorder_rank(path, h) == rank


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0))
def test_rank_to_path_hypothesis(h, seed):
    rank = seed % (2 ** (h + 1) - 1)
    assert inorder_rank(rank_to_path(rank, h), h) == rank


@pytest.mark.parametrize("variant", ["log2", "optimal"])
def test_round_trip_and_uniqueness(variant):
    for b, coords in all_coords(7, variant):
        seen = set()
        for coord in coords.values():
            bits = encode(coord)
            assert set(bits) <= {"0", "1"}
            assert bits not in seen
            seen.add(bits)
            assert decode(bits, b.params) == coord


def test_malformed_bits_rejected():
    p = EmbedParams(5, "log2")
    good = encode(Coordinate((LevelCyclePair(1, 2),), 0, p))
    with pytest.raises(MalformedBits):
        decode(good + "0", p)  # trailing bit
    with pytest.raises(MalformedBits):
        decode(good[:-1], p)  # truncated
    with pytest.raises(MalformedBits):
        decode("abc", p)
    po = EmbedParams(5, "optimal")
    with pytest.raises(MalformedBits):
        decode("1" * 200, po)  # runaway unary
    with pytest.raises(MalformedBits):
        decode("", p)


def test_decode_rejects_out_of_range_fields():
    # a log2 bit pattern whose cycle field exceeds P-1 must not silently wrap
    p = EmbedParams(5, "log2")  # S=5, P=11: level 3 bits, cycle 4 bits
    bad_cycle = "0" + "000" + "1111"  # cycle 15 > 10
    with pytest.raises(MalformedBits):
        decode(bad_cycle, p)


# -- comparison rule --------------------------------------------------------


@pytest.mark.parametrize("variant", ["log2", "optimal"])
def test_D_zero_iff_equal(variant):
    for b, coords in all_coords(6, variant):
        for s in coords.values():
            for t in coords.values():
                cmp = compare_D(s, t)
                assert (cmp.D == 0) == (s == t)
                assert cmp.D >= 0


def test_D_incompatible_params():
    a = Coordinate((LevelCyclePair(0, 0),), 0, EmbedParams(3, "log2"))
    b = Coordinate((LevelCyclePair(0, 0),), 0, EmbedParams(4, "log2"))
    with pytest.raises(IncompatibleParams):
        compare_D(a, b)


def test_D_equal_cycle_tie_goes_left():
    # regression: bridge + square, s = 3 (deep in the square), t = 1 (the
    # junction).  s_C == t_C here; counting the descent on the right branch
    # would rank neighbor 4 ahead of neighbor 2, contradicting the metric.
    b = Built(BRIDGE_SQUARE, "log2")
    coords = assign_coordinates(b.modified)
    d2 = compare_D(coords[2], coords[1]).D
    d4 = compare_D(coords[4], coords[1]).D
    e = embed(b.modified)
    pts = e.realize()
    from cactusroute.numerics import distance
    gap = distance(pts[4], pts[1]) - distance(pts[2], pts[1])
    assert gap.strictly_positive() is True  # 2 really is closer to 1 than 4
    assert d2 < d4


def test_D_breakdown_consistency():
    for b, coords in all_coords(5, "log2"):
        P = b.params.positions_per_arc
        for s in coords.values():
            for t in coords.values():
                cmp = compare_D(s, t)
                assert cmp.D == cmp.l + cmp.r + P * cmp.u + cmp.d
                # d counts semi-circles below the divergence point on s's side
                s_depth = s.depth
                junction_depth = cmp.h * b.params.levels_per_super + cmp.s_C.level
                assert cmp.d == s_depth - junction_depth
                assert cmp.u >= 0 and cmp.d >= 0 and cmp.l >= 0 and cmp.r >= 0


def test_chain_descent_distance():
    # straight path graph: D from the deepest vertex to the root counts one
    # up-step per semi-circle plus the angular unwinding
    b = Built(g(4, [(0, 1), (1, 2), (2, 3)]), "log2")
    coords = assign_coordinates(b.modified)
    deep = max(coords, key=lambda v: coords[v].depth)
    cmp = compare_D(coords[deep], coords[0])
    # d counts s's side of the divergence, u counts t's; the root is at the
    # divergence point itself
    assert cmp.d == coords[deep].depth - coords[0].depth
    assert cmp.u == 0
