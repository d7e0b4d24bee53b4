"""Command line front end: gen, embed, route, verify, export-svg.

Commands read and write JSON files ('-' for the standard streams), are
deterministic given their flags, and echo the run configuration into every
output header.  `embed` emits the coordinate file that `route` consumes;
geometry is optional everywhere, so deep graphs whose Euclidean realization
exceeds the precision ceiling still embed, route, and verify
combinatorially.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import io as formats
from .coords import assign_coordinates, to_euclidean
from .corpus import InfeasibleShape, gen_cactus
from .decompose import classify_roles, heavy_path_decompose, make_codebook
from .embed import collapse_dummies, embed
from .graph import CactusError, build_depth_tree, default_root_cycle, validate_cactus
from .modify import modify_graph
from .numerics import PrecisionExhausted
from .params import VARIANTS, EmbedParams
from .router import (DComparator, HopLimitExceeded, StaticL2Comparator, Stuck,
                     route)
from .schedule import compute_schedule, estimate_required_bits
from .verify import (AuditCheck, AuditReport, audit_bits, audit_underestimates,
                     check_greedy, sample_lemma1)


class CliError(Exception):
    pass


@contextlib.contextmanager
def _open(path, mode="r"):
    if path in (None, "-"):
        yield sys.stdin if mode == "r" else sys.stdout
        return
    try:
        with open(path, mode) as fh:
            yield fh
    except OSError as exc:
        raise CliError("%s: %s" % (path, exc.strerror)) from exc


def _load_graph(path):
    with _open(path) as fh:
        head = fh.read()
    if head.lstrip().startswith("{"):
        import io as _io
        return formats.read_graph(_io.StringIO(head))
    import io as _io
    return formats.read_edge_list(_io.StringIO(head))


def _pipeline(graph, variant, root_cycle=None):
    decomp = validate_cactus(graph)
    root = root_cycle if root_cycle is not None else default_root_cycle(decomp)
    tree = build_depth_tree(decomp, root)
    hpd = heavy_path_decompose(tree)
    roles = classify_roles(tree, hpd)
    params = EmbedParams(graph.vertex_count, variant)
    codebook = make_codebook(tree, hpd, roles, params) if variant == "optimal" else None
    modified = modify_graph(tree, hpd, roles, params, codebook)
    return modified


# -- commands --------------------------------------------------------------


def cmd_gen(args):
    try:
        graph = gen_cactus(args.n, args.shape, args.seed)
    except InfeasibleShape as exc:
        raise CliError(str(exc)) from exc
    with _open(args.out, "w") as fh:
        if args.format == "edgelist":
            formats.write_edge_list(graph, fh)
        else:
            formats.write_graph(graph, fh)
    return 0


def cmd_embed(args):
    graph = _load_graph(getattr(args, "in"))
    modified = _pipeline(graph, args.variant, args.root_cycle)
    coords = assign_coordinates(modified)
    config = {"variant": args.variant, "root_cycle": args.root_cycle,
              "n": graph.vertex_count}
    with _open(args.out, "w") as fh:
        formats.write_coords(coords, modified.params, graph, fh, config)
    if args.embedding:
        emb = embed(modified)
        if args.collapsed:
            emb = collapse_dummies(emb)
        try:
            with _open(args.embedding, "w") as fh:
                formats.write_embedding(emb, fh, prec=args.precision)
        except PrecisionExhausted as exc:
            raise CliError("geometry out of reach: %s" % exc) from exc
    return 0


def cmd_route(args):
    with _open(args.coords) as fh:
        coords, params, graph = formats.read_coords(fh)
    src, dst = args.source, args.dest
    for v in (src, dst):
        if v not in coords:
            raise CliError("no vertex %d in the coordinate table" % v)
    points = None
    if args.comparator == "l2" or args.audit:
        depth = max(c.depth for c in coords.values())
        try:
            sched = compute_schedule(params, max(1, depth))
            points = {v: to_euclidean(c, prec=sched.precision)
                      for v, c in coords.items()}
        except PrecisionExhausted as exc:
            raise CliError("geometry out of reach: %s" % exc) from exc
    if args.comparator == "l2":
        comparator = StaticL2Comparator(points)
    else:
        comparator = DComparator(coords)
    try:
        trace = route(graph.adjacency, src, dst, comparator,
                      hop_limit=args.hop_limit,
                      audit=points if args.audit else None)
    except Stuck as exc:
        raise CliError("stuck: %s" % exc) from exc
    except HopLimitExceeded as exc:
        raise CliError(str(exc)) from exc
    with _open(args.out, "w") as fh:
        fh.write(trace.to_json_lines() + "\n")
    return 0


def cmd_verify(args):
    graph = _load_graph(getattr(args, "in"))
    report = AuditReport()
    try:
        modified = _pipeline(graph, args.variant, args.root_cycle)
    except CactusError as exc:
        report.add(AuditCheck("cactus validity", 1, 1, None, str(exc)))
        return _finish_verify(args, report)
    report.add(AuditCheck("cactus validity", 1, 0))

    same = modified.contracted_base().edges == graph.edges
    report.add(AuditCheck("modify/collapse round-trip", 1, 0 if same else 1))

    coords = assign_coordinates(modified)
    report.extend(audit_bits(coords, modified.params))

    adj = graph.adjacency
    comparator = DComparator(coords)
    delivered = pairs = 0
    for s in range(graph.vertex_count):
        for t in range(graph.vertex_count):
            if s == t:
                continue
            pairs += 1
            try:
                if route(adj, s, t, comparator).delivered:
                    delivered += 1
            except (Stuck, HopLimitExceeded):
                pass
    report.add(AuditCheck("D-routing delivery", pairs, pairs - delivered))

    emb = embed(modified)
    try:
        report.extend(check_greedy(emb))
        report.extend(audit_underestimates(emb))
    except PrecisionExhausted:
        need = estimate_required_bits(modified.params, max(1, modified.max_depth))
        shown = "~%d" % need if need < 10 ** 9 else "more than 10^%d" % (len(str(need)) - 1)
        report.add(AuditCheck(
            "geometry audits", 0, 0, None,
            "skipped: schedule needs %s bits, over the ceiling" % shown))

    report.extend(sample_lemma1(args.lemma_samples, seed=args.seed))
    return _finish_verify(args, report)


def _finish_verify(args, report):
    config = {"variant": args.variant, "seed": args.seed,
              "root_cycle": args.root_cycle}
    if args.report:
        with _open(args.report, "w") as fh:
            formats.write_report(report, fh, config)
    print(report.text())
    return 0 if report.verdict == "pass" else 1


def cmd_export_svg(args):
    graph = _load_graph(getattr(args, "in"))
    modified = _pipeline(graph, args.variant, args.root_cycle)
    emb = embed(modified)
    if args.collapsed:
        emb = collapse_dummies(emb)
    with _open(args.out, "w") as fh:
        fh.write(formats.embedding_to_svg(emb, size=args.size) + "\n")
    return 0


# -- argument plumbing -----------------------------------------------------


def _common_graph_flags(p):
    p.add_argument("--in", default="-", help="graph file (JSON or edge list)")
    p.add_argument("--variant", choices=VARIANTS, default="log2")
    p.add_argument("--root-cycle", type=int, default=None,
                   help="cycle id to root the depth tree at")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cactusroute",
        description="Greedy embeddings and succinct-coordinate routing "
                    "for Christmas cactus graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a cactus graph")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--shape", default="uniform",
                   choices=("chain", "star", "caterpillar", "uniform"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("json", "edgelist"), default="json")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("embed", help="assign succinct coordinates")
    _common_graph_flags(p)
    p.add_argument("--out", default="-", help="coordinate file")
    p.add_argument("--embedding", default=None,
                   help="also write Euclidean geometry to this file")
    p.add_argument("--collapsed", action="store_true",
                   help="geometry restricted to the base graph")
    p.add_argument("--precision", type=int, default=None,
                   help="exact working precision for the geometry file")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("route", help="greedy-route between two vertices")
    p.add_argument("--coords", required=True)
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="dest", type=int, required=True)
    p.add_argument("--comparator", choices=("D", "l2"), default="D")
    p.add_argument("--audit", action="store_true",
                   help="record per-hop L2 distances in the trace")
    p.add_argument("--hop-limit", type=int, default=None)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("verify", help="audit a graph's embedding end to end")
    _common_graph_flags(p)
    p.add_argument("--report", default=None, help="JSON report file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lemma-samples", type=int, default=200)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-svg", help="draw the embedding")
    _common_graph_flags(p)
    p.add_argument("--out", default="-")
    p.add_argument("--collapsed", action="store_true")
    p.add_argument("--size", type=int, default=640)
    p.set_defaults(func=cmd_export_svg)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (CactusError, formats.FileFormatError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
