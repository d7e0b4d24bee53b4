import pytest

from cactusroute.corpus import exhaustive_cacti
from cactusroute.graph import validate_cactus

from conftest import BRIDGE_SQUARE, TRIANGLE_CHAIN, Built, g


def all_builds(n_max, variant):
    for n in range(2, n_max + 1):
        for graph in exhaustive_cacti(n):
            yield Built(graph, variant)


# -- round trip -------------------------------------------------------------


@pytest.mark.parametrize("variant", ["log2", "optimal"])
def test_contracting_dummies_recovers_base(variant):
    for b in all_builds(7, variant):
        back = b.modified.contracted_base()
        assert back.vertex_count == b.graph.vertex_count
        assert back.edges == b.graph.edges


@pytest.mark.parametrize("variant", ["log2", "optimal"])
def test_modified_graph_is_valid_cactus(variant):
    for b in all_builds(6, variant):
        validate_cactus(b.modified.graph())


# -- depth discipline -------------------------------------------------------


@pytest.mark.parametrize("variant", ["log2", "optimal"])
def test_depths_consecutive_along_chains(variant):
    # each cycle sits exactly one semi-circle below its parent cycle
    for b in all_builds(6, variant):
        for c in b.modified.cycles:
            if c.parent_idx is not None:
                assert c.depth == b.modified.cycles[c.parent_idx].depth + 1


def test_log2_heads_at_multiples_of_s():
    # in the log2 variant every light child's heavy-path head starts at the
    # next multiple of S below its parent
    for b in all_builds(7, "log2"):
        S = b.params.levels_per_super
        for cid in range(b.tree.cycle_count):
            mc = b.modified.cycles[b.modified.mod_of[cid]]
            if cid == b.tree.root:
                assert mc.depth == 0
                continue
            par = b.tree.parent[cid]
            if b.hpd.path_of[par] != b.hpd.path_of[cid]:
                assert b.hpd.relative_depth[cid] == 0
                assert mc.depth % S == 0
            else:
                par_mc = b.modified.cycles[b.modified.mod_of[par]]
                assert mc.depth == par_mc.depth + 1  # heavy: no gap in log2


def test_optimal_depth_is_super_times_s_plus_level():
    for b in all_builds(6, "optimal"):
        S = b.params.levels_per_super
        for cid in range(b.tree.cycle_count):
            mc = b.modified.cycles[b.modified.mod_of[cid]]
            assert mc.depth % S == b.codebook.level_value[cid]


# -- dummy chain structure --------------------------------------------------


def test_light_chain_shape_log2():
    # bridge + square, n = 5, S = 5: the square's head must drop from depth 0
    # to depth 5 through 4 plain dummy 2-cycles
    b = Built(BRIDGE_SQUARE, "log2")
    plain = [c for c in b.modified.cycles if c.kind == "plain"]
    assert len(plain) == 4
    assert sorted(c.depth for c in plain) == [1, 2, 3, 4]
    for c in plain:
        assert len(c.ring) == 2
        assert c.turnpike is None and c.placeholder is None


def test_heavy_dummy_ring_structure():
    # optimal-variant heavy dummies are (primary, placeholder, successor)
    # triangles with the successor at the reserved rank
    found = 0
    for b in all_builds(6, "optimal"):
        tau = b.params.turnpike_rank
        for c in b.modified.cycles:
            if c.kind == "heavy":
                found += 1
                assert len(c.ring) == 3
                assert c.positions[c.placeholder] == 0
                assert c.positions[c.turnpike] == tau
                assert c.primary not in c.positions
    assert found > 0


def test_reserved_rank_only_for_turnpikes():
    for variant in ("log2", "optimal"):
        for b in all_builds(6, variant):
            tau = b.params.turnpike_rank
            for c in b.modified.cycles:
                for v, q in c.positions.items():
                    assert 0 <= q < b.params.positions_per_arc
                    if q == tau:
                        assert v == c.turnpike


def test_positions_unique_per_cycle():
    for b in all_builds(7, "log2"):
        for c in b.modified.cycles:
            qs = list(c.positions.values())
            assert len(qs) == len(set(qs))


# -- bookkeeping ------------------------------------------------------------


def test_primary_placed_on_parent_not_self():
    for b in all_builds(6, "log2"):
        placement = b.modified.placement()
        for c in b.modified.cycles:
            if c.primary is not None:
                ci, _q = placement[c.primary]
                assert ci != c.idx
                assert c.primary not in c.positions


def test_every_vertex_placed_exactly_once():
    for variant in ("log2", "optimal"):
        for b in all_builds(6, variant):
            placement = b.modified.placement()
            assert len(placement) == b.modified.vertex_count
            counts = {}
            for c in b.modified.cycles:
                for v in c.positions:
                    counts[v] = counts.get(v, 0) + 1
            assert all(k == 1 for k in counts.values())


def test_cycles_sorted_by_depth_and_parent_above():
    for b in all_builds(6, "optimal"):
        depths = [c.depth for c in b.modified.cycles]
        assert depths == sorted(depths)
        for i, c in enumerate(b.modified.cycles):
            assert c.idx == i
            if c.parent_idx is not None:
                assert c.parent_idx < i


def test_origin_tracks_dummy_provenance():
    b = Built(TRIANGLE_CHAIN, "optimal")
    m = b.modified
    for v in m.dummy_vertices:
        assert v >= b.graph.vertex_count
        assert v in m.origin


def test_single_cycle_graph_has_no_dummies_log2():
    b = Built(g(3, [(0, 1), (1, 2), (0, 2)]), "log2")
    assert not b.modified.dummy_vertices
    assert len(b.modified.cycles) == 1
    assert b.modified.cycles[0].depth == 0
