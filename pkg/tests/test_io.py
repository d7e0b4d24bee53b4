import io
import json

import pytest

from cactusroute.coords import assign_coordinates
from cactusroute.embed import collapse_dummies, embed
from cactusroute.io import (FileFormatError, coords_to_jsonable,
                            embedding_to_svg, read_coords, read_edge_list,
                            read_graph, write_coords, write_edge_list,
                            write_embedding, write_graph, write_report,
                            write_schedule)
from cactusroute.verify import AuditCheck, AuditReport

from conftest import BRIDGE_SQUARE, TRIANGLE_CHAIN, Built


def round_trip(write, read, *args):
    buf = io.StringIO()
    write(*args, buf)
    buf.seek(0)
    return read(buf)


# -- graph files ------------------------------------------------------------


def test_graph_round_trip():
    back = round_trip(write_graph, read_graph, BRIDGE_SQUARE)
    assert back.vertex_count == 5
    assert back.edges == BRIDGE_SQUARE.edges


def test_graph_file_deterministic():
    a, b = io.StringIO(), io.StringIO()
    write_graph(TRIANGLE_CHAIN, a)
    write_graph(TRIANGLE_CHAIN, b)
    assert a.getvalue() == b.getvalue()


def test_wrong_kind_rejected():
    buf = io.StringIO()
    write_graph(BRIDGE_SQUARE, buf)
    buf.seek(0)
    with pytest.raises(FileFormatError):
        read_coords(buf)


def test_bad_version_rejected():
    obj = {"kind": "graph", "version": 99, "n": 2, "edges": [[0, 1]]}
    with pytest.raises(FileFormatError):
        read_graph(io.StringIO(json.dumps(obj)))


def test_non_json_rejected():
    with pytest.raises((FileFormatError, json.JSONDecodeError)):
        read_graph(io.StringIO("plainly not json"))


# -- edge lists -------------------------------------------------------------


def test_edge_list_round_trip():
    back = round_trip(write_edge_list, read_edge_list, BRIDGE_SQUARE)
    assert back.edges == BRIDGE_SQUARE.edges
    assert back.vertex_count == 5


def test_edge_list_comments_and_errors():
    g = read_edge_list(io.StringIO("# header\n0 1\n1 2  # inline\n\n0 2\n"))
    assert g.vertex_count == 3 and len(g.edges) == 3
    with pytest.raises(FileFormatError):
        read_edge_list(io.StringIO("0 1 2\n"))


# -- coordinate files -------------------------------------------------------


@pytest.mark.parametrize("variant", ["log2", "optimal"])
def test_coords_round_trip(variant):
    b = Built(BRIDGE_SQUARE, variant)
    coords = assign_coordinates(b.modified)
    back, params, graph = round_trip(write_coords, read_coords,
                                     coords, b.params, b.graph)
    assert params == b.params
    assert graph.edges == b.graph.edges
    assert back == coords


def test_coords_bits_are_canonical():
    # corrupting the pairs (but not the bits) must be caught on read
    b = Built(BRIDGE_SQUARE, "log2")
    coords = assign_coordinates(b.modified)
    obj = coords_to_jsonable(coords, b.params, b.graph)
    obj["vertices"]["3"]["pairs"][0][1] += 1
    with pytest.raises(FileFormatError):
        read_coords(io.StringIO(json.dumps(obj)))


def test_coords_bad_bits_rejected():
    b = Built(BRIDGE_SQUARE, "log2")
    coords = assign_coordinates(b.modified)
    obj = coords_to_jsonable(coords, b.params, b.graph)
    obj["vertices"]["0"]["bits"] += "0"
    with pytest.raises(FileFormatError):
        read_coords(io.StringIO(json.dumps(obj)))


# -- embedding / schedule / report writers ----------------------------------


def test_embedding_file_has_geometry():
    b = Built(BRIDGE_SQUARE, "log2")
    e = collapse_dummies(embed(b.modified))
    buf = io.StringIO()
    write_embedding(e, buf)
    obj = json.loads(buf.getvalue())
    assert obj["kind"] == "embedding"
    assert set(obj["vertices"]) == {str(v) for v in range(5)}
    rec = obj["vertices"]["0"]
    assert {"level", "angular_rank", "x", "y"} <= set(rec)


def test_schedule_file():
    b = Built(BRIDGE_SQUARE, "log2")
    buf = io.StringIO()
    write_schedule(embed(b.modified).schedule(), buf)
    obj = json.loads(buf.getvalue())
    assert obj["kind"] == "schedule"
    assert len(obj["R"]) == obj["depth_levels"] + 1
    assert float(obj["delta"][0]) > 0


def test_report_file():
    buf = io.StringIO()
    write_report(AuditReport().add(AuditCheck("x", 5, 0)), buf, config={"n": 5})
    obj = json.loads(buf.getvalue())
    assert obj["kind"] == "report" and obj["verdict"] == "pass"
    assert obj["config"] == {"n": 5}


# -- SVG --------------------------------------------------------------------


def test_svg_element_counts():
    b = Built(BRIDGE_SQUARE, "log2")
    e = embed(b.modified)
    svg = embedding_to_svg(e)
    assert svg.startswith("<svg")
    assert svg.count('class="arc"') == e.depth + 1
    assert svg.count('class="vertex"') == b.modified.vertex_count
    # only real vertices are labeled
    assert svg.count("<text") == 5


def test_svg_collapsed_view():
    b = Built(BRIDGE_SQUARE, "log2")
    svg = embedding_to_svg(collapse_dummies(embed(b.modified)))
    assert svg.count('class="vertex"') == 5
    assert svg.count("<line") == len(BRIDGE_SQUARE.edges)
