"""File formats: graph, coordinate table, embedding, report, SVG.

JSON is the single interchange format; every file carries a version field
and enough header to be self-describing.  The coordinate file is the
pipeline's pivot: serialized bits plus skeleton adjacency plus params is
everything routing needs (the bits field is canonical; pairs are included
for human eyes).  All writers emit key-sorted JSON so identical inputs
give bit-identical files.
"""

from __future__ import annotations

import json
import math

from .coords import Coordinate, MalformedBits, decode
from .graph import Graph
from .params import EmbedParams

FORMAT_VERSION = 1


class FileFormatError(Exception):
    pass


def _dump(obj, fh):
    json.dump(obj, fh, sort_keys=True, indent=1)
    fh.write("\n")


def _expect(obj, kind):
    if not isinstance(obj, dict) or obj.get("kind") != kind:
        raise FileFormatError("expected a %s file" % kind)
    if obj.get("version") != FORMAT_VERSION:
        raise FileFormatError("unsupported version %r" % obj.get("version"))
    return obj


# -- graphs ----------------------------------------------------------------


def graph_to_jsonable(graph):
    return {
        "kind": "graph",
        "version": FORMAT_VERSION,
        "n": graph.vertex_count,
        "edges": sorted([u, v] for u, v in graph.edges),
    }


def write_graph(graph, fh):
    _dump(graph_to_jsonable(graph), fh)


def read_graph(fh):
    obj = _expect(json.load(fh), "graph")
    try:
        return Graph.from_edges(obj["n"], [tuple(e) for e in obj["edges"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError("bad graph file: %s" % exc) from exc


def read_edge_list(fh):
    """Plain text alternative: one `u v` pair per line, '#' comments."""
    edges = []
    top = -1
    for line in fh:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FileFormatError("expected 'u v', got %r" % line)
        u, v = int(parts[0]), int(parts[1])
        edges.append((u, v))
        top = max(top, u, v)
    return Graph.from_edges(top + 1, edges)


def write_edge_list(graph, fh):
    fh.write("# %d vertices, %d edges\n" % (graph.vertex_count, len(graph.edges)))
    for u, v in sorted(graph.edges):
        fh.write("%d %d\n" % (u, v))


# -- coordinate tables -----------------------------------------------------


def coords_to_jsonable(coords, params, graph, config=None):
    root_levels = {c.root_level for c in coords.values()}
    assert len(root_levels) == 1
    return {
        "kind": "coords",
        "version": FORMAT_VERSION,
        "params": {"n": params.n, "c": params.c, "variant": params.variant},
        "root_level": root_levels.pop(),
        "adjacency": sorted([u, v] for u, v in graph.edges),
        "vertices": {
            str(v): {"bits": c.to_jsonable()["bits"],
                     "pairs": [[p.level, p.cycle] for p in c.pairs]}
            for v, c in coords.items()
        },
        "config": config or {},
    }


def write_coords(coords, params, graph, fh, config=None):
    _dump(coords_to_jsonable(coords, params, graph, config), fh)


def read_coords(fh):
    """-> (coords: vertex -> Coordinate, params, graph)."""
    obj = _expect(json.load(fh), "coords")
    try:
        p = obj["params"]
        params = EmbedParams(p["n"], p["variant"], p["c"])
        coords = {int(v): decode(rec["bits"], params)
                  for v, rec in obj["vertices"].items()}
        graph = Graph.from_edges(p["n"], [tuple(e) for e in obj["adjacency"]])
    except (KeyError, TypeError, ValueError, MalformedBits) as exc:
        raise FileFormatError("bad coordinate file: %s" % exc) from exc
    for v, c in coords.items():
        if [[q.level, q.cycle] for q in c.pairs] != obj["vertices"][str(v)]["pairs"]:
            raise FileFormatError("bits and pairs disagree for vertex %s" % v)
    return coords, params, graph


# -- embeddings / schedules / reports --------------------------------------


def write_embedding(embedding, fh, prec=None, digits=30, geometry=True):
    obj = embedding.to_jsonable(prec=prec, digits=digits, geometry=geometry)
    obj.update({"kind": "embedding", "version": FORMAT_VERSION})
    _dump(obj, fh)


def write_schedule(schedule, fh):
    obj = schedule.to_jsonable()
    obj.update({"kind": "schedule", "version": FORMAT_VERSION})
    _dump(obj, fh)


def write_report(report, fh, config=None):
    obj = report.to_jsonable()
    obj.update({"kind": "report", "version": FORMAT_VERSION, "config": config or {}})
    _dump(obj, fh)


# -- SVG -------------------------------------------------------------------


def embedding_to_svg(embedding, size=640, label=True):
    """Semi-circle guides, straight edges, vertex markers.

    Radii differences shrink brutally with depth, so levels are respaced
    evenly for display while angles stay true -- the figure shows structure,
    not metric truth.
    """
    level = {v: embedding.level[v] for v in embedding.vertices}
    rank = embedding.rank
    depth = max(level.values()) if level else 0
    mod = embedding.modified
    params = embedding.params

    angles = {}
    for cyc in mod.cycles:
        for v, q in cyc.positions.items():
            if cyc.primary is None:
                angles[v] = math.pi - math.pi * q / params.root_divisor
            else:
                # display spreading: a fixed visual wedge per level
                spread = 0.9 * math.pi / (3 ** cyc.depth)
                angles[v] = angles[cyc.primary] - spread * (
                    q / params.arc_divisor - 0.5)
    cx, cy = size / 2.0, size * 0.9
    unit = size * 0.38 / (depth + 1)

    def xy(v):
        r = unit * (level[v] + 1)
        return (cx + r * math.cos(angles[v]), cy - r * math.sin(angles[v]))

    parts = ['<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" '
             'viewBox="0 0 %d %d">' % (size, size, size, size)]
    parts.append('<rect width="%d" height="%d" fill="white"/>' % (size, size))
    for i in range(depth + 1):
        r = unit * (i + 1)
        parts.append(
            '<path d="M %.2f %.2f A %.2f %.2f 0 0 1 %.2f %.2f" '
            'class="arc" fill="none" stroke="#ccc" stroke-width="1"/>'
            % (cx - r, cy, r, r, cx + r, cy))
    seen = set(level)
    for e in embedding.edges():
        a, b = sorted(e)
        if a not in seen or b not in seen:
            continue
        (x1, y1), (x2, y2) = xy(a), xy(b)
        parts.append('<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
                     'stroke="#444" stroke-width="1.2"/>' % (x1, y1, x2, y2))
    for v in sorted(seen):
        x, y = xy(v)
        dummy = v in mod.dummy_vertices
        parts.append('<circle class="vertex" cx="%.2f" cy="%.2f" r="%.1f" '
                     'fill="%s"/>' % (x, y, 3.0 if dummy else 4.5,
                                      "#bbb" if dummy else "#c33"))
        if label and not dummy:
            parts.append('<text x="%.2f" y="%.2f" font-size="11" '
                         'text-anchor="middle">%d</text>' % (x, y - 7, v))
    parts.append("</svg>")
    return "\n".join(parts)
