import json

import pytest

from cactusroute.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- gen --------------------------------------------------------------------


def test_gen_writes_graph_json(tmp_path, capsys):
    out = tmp_path / "g.json"
    code, _, _ = run(capsys, "gen", "-n", "7", "--shape", "chain",
                     "--seed", "1", "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["kind"] == "graph" and obj["n"] == 7


def test_gen_edgelist_to_stdout(capsys):
    code, text, _ = run(capsys, "gen", "-n", "4", "--shape", "chain",
                        "--format", "edgelist")
    assert code == 0
    lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    assert all(len(l.split()) == 2 for l in lines)


def test_gen_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        run(capsys, "gen", "-n", "12", "--seed", "5", "--out", str(out))
    assert a.read_bytes() == b.read_bytes()


# -- embed ------------------------------------------------------------------


@pytest.fixture
def chain6(tmp_path, capsys):
    g = tmp_path / "g.json"
    run(capsys, "gen", "-n", "6", "--shape", "chain", "--seed", "0",
        "--out", str(g))
    return g


def test_embed_writes_coords(chain6, tmp_path, capsys):
    out = tmp_path / "coords.json"
    code, _, _ = run(capsys, "embed", "--in", str(chain6), "--out", str(out))
    assert code == 0
    obj = json.loads(out.read_text())
    assert obj["kind"] == "coords"
    assert len(obj["vertices"]) == 6
    assert all(set(rec["bits"]) <= {"0", "1"}
               for rec in obj["vertices"].values())


def test_embed_geometry_file(chain6, tmp_path, capsys):
    coords = tmp_path / "c.json"
    emb = tmp_path / "e.json"
    code, _, _ = run(capsys, "embed", "--in", str(chain6), "--out", str(coords),
                     "--embedding", str(emb), "--collapsed")
    assert code == 0
    obj = json.loads(emb.read_text())
    assert obj["kind"] == "embedding"
    assert "x" in obj["vertices"]["0"]


def test_embed_deep_geometry_refused(tmp_path, capsys):
    g = tmp_path / "path.json"
    run(capsys, "gen", "-n", "14", "--shape", "star", "--seed", "0",
        "--out", str(g))
    # a 14-vertex star is fine; use a long chain for real depth
    g2 = tmp_path / "chain.json"
    run(capsys, "gen", "-n", "40", "--shape", "chain", "--seed", "0",
        "--out", str(g2))
    code, _, err = run(capsys, "embed", "--in", str(g2), "--out", "-",
                       "--embedding", str(tmp_path / "e.json"))
    assert code == 2
    assert "geometry out of reach" in err


# -- route ------------------------------------------------------------------


@pytest.fixture
def chain6_coords(chain6, tmp_path, capsys):
    out = tmp_path / "coords.json"
    run(capsys, "embed", "--in", str(chain6), "--out", str(out))
    return out


def test_route_delivers(chain6_coords, capsys):
    code, text, _ = run(capsys, "route", "--coords", str(chain6_coords),
                        "--from", "5", "--to", "0")
    assert code == 0
    recs = [json.loads(l) for l in text.splitlines() if l]
    assert recs[0]["vertex"] == 5 and recs[-1]["vertex"] == 0
    ds = [r["D"] for r in recs]
    assert ds == sorted(ds, reverse=True) and ds[-1] == 0


def test_route_one_hop(chain6_coords, capsys):
    code, text, _ = run(capsys, "route", "--coords", str(chain6_coords),
                        "--from", "0", "--to", "1")
    assert code == 0
    assert len([l for l in text.splitlines() if l]) == 2


def test_route_l2_with_audit(chain6_coords, capsys):
    code, text, _ = run(capsys, "route", "--coords", str(chain6_coords),
                        "--from", "4", "--to", "0", "--comparator", "l2",
                        "--audit")
    assert code == 0
    recs = [json.loads(l) for l in text.splitlines() if l]
    dist = [float(r["distance"]) for r in recs]
    assert dist == sorted(dist, reverse=True) and dist[-1] == 0.0


def test_route_unknown_vertex(chain6_coords, capsys):
    code, _, err = run(capsys, "route", "--coords", str(chain6_coords),
                       "--from", "0", "--to", "99")
    assert code == 2 and "no vertex" in err


# -- verify -----------------------------------------------------------------


def test_verify_pipeline_passes(chain6, tmp_path, capsys):
    rep = tmp_path / "report.json"
    code, text, _ = run(capsys, "verify", "--in", str(chain6),
                        "--lemma-samples", "50", "--report", str(rep))
    assert code == 0
    assert "verdict: pass" in text
    obj = json.loads(rep.read_text())
    assert obj["verdict"] == "pass"
    names = [c["name"] for c in obj["checks"]]
    assert "cactus validity" in names and "D-routing delivery" in names


def test_verify_optimal_skips_geometry(chain6, capsys):
    code, text, _ = run(capsys, "verify", "--in", str(chain6),
                        "--variant", "optimal", "--lemma-samples", "20")
    assert code == 0
    assert "skipped" in text and "verdict: pass" in text


def test_verify_rejects_non_cactus(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    # K4 minus nothing: edge (0,1) on two triangles
    bad.write_text("0 1\n1 2\n0 2\n1 3\n0 3\n")
    code, text, _ = run(capsys, "verify", "--in", str(bad),
                        "--lemma-samples", "10")
    assert code == 1
    assert "verdict: fail" in text


# -- export-svg and error paths --------------------------------------------


def test_export_svg(chain6, tmp_path, capsys):
    out = tmp_path / "fig.svg"
    code, _, _ = run(capsys, "export-svg", "--in", str(chain6),
                     "--out", str(out))
    assert code == 0
    svg = out.read_text()
    assert svg.startswith("<svg") and 'class="vertex"' in svg


def test_missing_file_is_exit_2(capsys):
    code, _, err = run(capsys, "embed", "--in", "/nonexistent/g.json")
    assert code == 2 and "error:" in err


def test_garbage_input_is_exit_2(tmp_path, capsys):
    f = tmp_path / "junk.json"
    f.write_text("{\"kind\": \"graph\", \"version\": 1, \"n\": 2, \"edges\": [[0,0]]}")
    code, _, err = run(capsys, "embed", "--in", str(f))
    assert code == 2


def test_embed_deterministic(chain6, tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        run(capsys, "embed", "--in", str(chain6), "--out", str(out))
    assert a.read_bytes() == b.read_bytes()
