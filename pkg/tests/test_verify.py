import pytest

from cactusroute.coords import MalformedBits, assign_coordinates, decode, encode
from cactusroute.corpus import exhaustive_cacti, gen_cactus
from cactusroute.embed import embed
from cactusroute.verify import (AuditCheck, AuditReport, audit_bits,
                                audit_underestimates, check_greedy,
                                perturb_radially, sample_lemma1)

from conftest import BRIDGE_SQUARE, Built


# -- report plumbing --------------------------------------------------------


def test_report_verdict_and_text():
    r = AuditReport()
    r.add(AuditCheck("a", 10, 0, 1.5, "fine"))
    assert r.verdict == "pass"
    r.add(AuditCheck("b", 4, 2))
    assert r.verdict == "fail"
    txt = r.text()
    assert "ok  " in txt and "FAIL" in txt and "verdict: fail" in txt
    data = r.to_jsonable()
    assert data["verdict"] == "fail" and len(data["checks"]) == 2


# -- greedy audit -----------------------------------------------------------


def test_greedy_passes_on_small_corpus():
    for n in range(2, 6):
        for graph in exhaustive_cacti(n):
            b = Built(graph, "log2")
            report = check_greedy(embed(b.modified))
            assert report.verdict == "pass"
            check = report.checks[0]
            assert check.population > 0
            # the ratio against eps_min can underflow float range, so only
            # require it to be non-negative
            assert check.worst_margin is None or check.worst_margin >= 0


def test_greedy_negative_control():
    # pushing a mid-chain vertex of a multi-level embedding outward breaks
    # greediness, and the audit must notice
    b = Built(BRIDGE_SQUARE, "log2")
    e = embed(b.modified)
    pts = e.realize()
    clean = check_greedy(e, points=pts)
    assert clean.verdict == "pass"
    broken = 0
    for v in sorted(e.level):
        if e.level[v] == 0:
            continue
        bad = perturb_radially(pts, v, 0.25)
        if check_greedy(e, points=bad).verdict == "fail":
            broken += 1
    assert broken > 0


def test_perturb_only_moves_target():
    b = Built(BRIDGE_SQUARE, "log2")
    pts = embed(b.modified).realize()
    moved = perturb_radially(pts, 3, 0.5)
    assert moved[3][0].lo != pts[3][0].lo
    for v in pts:
        if v != 3:
            assert moved[v] is pts[v]


# -- underestimate audit ----------------------------------------------------


def test_underestimates_pass_on_small_corpus():
    for n in range(2, 5):
        for graph in exhaustive_cacti(n):
            b = Built(graph, "log2")
            report = audit_underestimates(embed(b.modified))
            assert report.verdict == "pass", report.text()
            names = [c.name for c in report.checks]
            assert names == ["delta underestimates", "beta underestimates"]


def test_underestimates_reject_collapsed_embedding():
    from cactusroute.embed import collapse_dummies

    b = Built(BRIDGE_SQUARE, "log2")
    with pytest.raises(ValueError):
        audit_underestimates(collapse_dummies(embed(b.modified)))


# -- Lemma 1 sampling -------------------------------------------------------


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_lemma1_sampler_zero_violations(seed):
    report = sample_lemma1(200, seed=seed)
    check = report.checks[0]
    assert check.population == 200
    assert check.failures == 0
    assert check.worst_margin >= 1.0  # margin is promised to be >= eps^2


def test_lemma1_sampler_deterministic():
    a = sample_lemma1(50, seed=3).checks[0]
    b = sample_lemma1(50, seed=3).checks[0]
    assert a.worst_margin == b.worst_margin


# -- bit budgets ------------------------------------------------------------


@pytest.mark.parametrize("variant", ["log2", "optimal"])
def test_bit_budgets_hold(variant):
    for n in (4, 16, 64):
        b = Built(gen_cactus(n, "caterpillar", seed=n), variant)
        coords = assign_coordinates(b.modified)
        report = audit_bits(coords, b.params)
        assert report.verdict == "pass", report.text()


def test_bit_budget_flags_regression():
    b = Built(BRIDGE_SQUARE, "log2")
    coords = assign_coordinates(b.modified)
    report = audit_bits(coords, b.params, budget=1)  # absurdly tight
    assert report.verdict == "fail"


# -- corrupted serializations ----------------------------------------------


def test_corrupted_bits_detected():
    # flipping bits either fails to decode or yields a different coordinate;
    # it must never silently decode back to the original
    b = Built(BRIDGE_SQUARE, "optimal")
    coords = assign_coordinates(b.modified)
    for coord in coords.values():
        bits = encode(coord)
        for i in range(len(bits)):
            flipped = bits[:i] + ("1" if bits[i] == "0" else "0") + bits[i + 1:]
            try:
                other = decode(flipped, b.params)
            except MalformedBits:
                continue
            assert other != coord
