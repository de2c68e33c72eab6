"""Command line front end.

One binary with subcommands; flags only, no environment configuration, and
stable sorting everywhere so identical inputs give byte-identical outputs.
Exit status: 0 success, 1 domain error (bad input data, unknown fixture), 2
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import aomoto as aomoto_mod
from . import graphs, hierarchy, landau, localhom, tracking, variation
from .poly import Polynomial, PolynomialError

_DOMAIN_ERRORS = (
    PolynomialError,
    graphs.GraphError,
    landau.LandauError,
    hierarchy.HierarchyError,
    localhom.LocalHomologyError,
    variation.ModelError,
    tracking.TrackingError,
    aomoto_mod.AomotoError,
    json.JSONDecodeError,
    OSError,
    ValueError,
)


def _emit(data, fmt: str):
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        _emit_text(data)


def _emit_text(data, indent=0):
    pad = "  " * indent
    if isinstance(data, dict):
        for key in data:
            value = data[key]
            if isinstance(value, (dict, list)):
                print(f"{pad}{key}:")
                _emit_text(value, indent + 1)
            else:
                print(f"{pad}{key}: {value}")
    elif isinstance(data, list):
        for value in data:
            if isinstance(value, (dict, list)):
                _emit_text(value, indent)
                print()
            else:
                print(f"{pad}{value}")
    else:
        print(f"{pad}{data}")


def _load_graph_arg(source: str) -> graphs.FeynmanGraph:
    if source in graphs.BUILTIN_GRAPHS:
        return graphs.BUILTIN_GRAPHS[source]()
    with open(source, "r", encoding="utf-8") as fh:
        return graphs.load_graph(json.load(fh))


def _graph_summary(g: graphs.FeynmanGraph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [
            {"id": e.id, "ends": list(e.ends), "mass": e.mass, "var": e.var}
            for e in g.edges
        ],
        "legs": [{"vertex": v, "momentum": p} for v, p in g.legs],
        "loop_number": g.loop_number,
    }


def _split_word(text: str) -> tuple:
    if text.startswith("word="):
        text = text[len("word="):]
    if text.startswith("w="):
        text = text[len("w="):]
    return tuple(part for part in text.split(",") if part)


def _components_for(args) -> list:
    if args.fixture:
        return landau.fixture_landau(args.fixture)
    if args.model:
        return list(variation.builtin_model(args.model).components)
    if args.aomoto:
        return aomoto_mod.aomoto_components(args.aomoto)
    g = _load_graph_arg(args.graph)
    comps = landau.oneloop_landau(g)
    if len(g.edges) == 2:
        comps = landau.bubble_split(comps, g)
    return comps


def _parse_assignments(text: str) -> dict:
    out = {}
    if not text:
        return out
    for item in text.split(","):
        name, _, value = item.partition("=")
        if not name or not value:
            raise ValueError(f"bad assignment {item!r}")
        out[name.strip()] = value.strip()
    return out


def _parse_index_set(text: str) -> frozenset:
    text = (text or "").strip()
    if not text:
        return frozenset()
    if "," in text:
        return frozenset(int(part) for part in text.split(",") if part)
    return frozenset(int(ch) for ch in text)


# -- subcommand handlers -----------------------------------------------------------


def _cmd_symanzik(args) -> int:
    g = _load_graph_arg(args.graph)
    data = {
        "U": str(graphs.symanzik_U(g)),
        "F": str(graphs.symanzik_F(g)),
    }
    _emit(data, args.format)
    return 0


def _cmd_landau(args) -> int:
    if args.action == "oneloop":
        g = _load_graph_arg(args.graph)
        comps = landau.oneloop_landau(g)
        if args.split and len(g.edges) == 2:
            comps = landau.bubble_split(comps, g)
        _emit([c.describe() for c in comps], args.format)
        return 0
    if args.action == "fixture":
        comps = landau.fixture_landau(args.name)
        _emit([c.describe() for c in comps], args.format)
        return 0
    # eliminate
    g = _load_graph_arg(args.graph)
    f = graphs.symanzik_F(g)
    chart = {
        name: Polynomial.const(int(value))
        for name, value in _parse_assignments(args.chart).items()
    }
    fiber_vars = [e.var for e in g.edges]
    result = landau.eliminate_critical_values(f, fiber_vars, chart)
    _emit({"eliminant": str(result)}, args.format)
    return 0


def _cmd_hierarchy(args) -> int:
    comps = _components_for(args)
    rel = hierarchy.hierarchy_graph(comps)
    if args.dot:
        print(hierarchy.to_dot(rel, comps))
        return 0
    if args.check:
        verdicts = []
        for text in args.check:
            word = _split_word(text)
            verdict = hierarchy.word_vanishes(rel, comps, word)
            verdicts.append({
                "word": list(word),
                "verdict": "forced_zero" if verdict.forced_zero else "unconstrained",
                "reason": verdict.reason,
            })
        _emit(verdicts, args.format)
        return 0
    _emit({"nodes": list(rel.nodes), "edges": hierarchy.edges_json(rel)}, args.format)
    return 0


def _cmd_homrank(args) -> int:
    cfg = localhom.pinch_config(
        args.n, args.m,
        _parse_index_set(args.I),
        _parse_index_set(args.J),
        _parse_index_set(args.K),
    )
    rank = localhom.local_rank(cfg, args.degree, args.variant)
    print(rank)
    return 0


def _cmd_signword(args) -> int:
    word = localhom.parse_word(args.word)
    sign, canonical = localhom.normalize_word(word)
    rendered = " ".join(str(op) for op in canonical)
    _emit({"sign": sign, "canonical": rendered}, args.format)
    return 0


def _load_model_arg(source: str) -> variation.VariationModel:
    try:
        return variation.builtin_model(source)
    except variation.ModelError:
        pass
    with open(source, "r", encoding="utf-8") as fh:
        return variation.model_from_json(json.load(fh))


def _cmd_variation(args) -> int:
    model = _load_model_arg(args.model)
    if args.action == "table":
        data = variation.model_to_json(model)
        _emit(data, args.format)
        return 0
    if args.action == "compose":
        word = _split_word(args.word)
        matrix = variation.compose(model, word)
        data = {
            "word": list(word),
            "basis": list(model.basis),
            "matrix": [[str(x) for x in row] for row in matrix],
            "images": {
                label: {
                    model.basis[i]: str(matrix[i][j])
                    for i in range(len(model.basis))
                    if matrix[i][j] != 0
                }
                for j, label in enumerate(model.basis)
            },
        }
        _emit(data, args.format)
        return 0
    # audit
    report = variation.check_against_hierarchy(model, max_len=args.max_len)
    _emit(report.describe(), args.format)
    return 0 if report.ok else 1


def _cmd_aomoto(args) -> int:
    if args.action == "symbol":
        words = aomoto_mod.aomoto_symbol(args.n)
        if args.format == "json":
            data = [
                {
                    "sign": w.sign,
                    "letters": [
                        {"I": sorted(I), "J": sorted(J)} for I, J in w.letters
                    ],
                }
                for w in words
            ]
            print(json.dumps(data, indent=2, sort_keys=True))
        else:
            for w in words:
                print(str(w))
        return 0
    if args.action == "components":
        comps = aomoto_mod.aomoto_components(args.n)
        _emit([c.describe() for c in comps], args.format)
        return 0
    # hierarchy
    rel = aomoto_mod.aomoto_edges(args.n)
    if args.dot:
        print(hierarchy.to_dot(rel, aomoto_mod.aomoto_components(args.n)))
        return 0
    _emit({"nodes": list(rel.nodes), "edges": hierarchy.edges_json(rel)}, args.format)
    return 0


def _parse_loop(text: str) -> tracking.Loop:
    name, _, rest = text.partition(":")
    if not rest:
        raise ValueError("loop spec must look like psq:center=9,r=0.1")
    opts = _parse_assignments(rest)
    return tracking.Loop(
        parameter=name,
        center=complex(opts.get("center", "0")),
        radius=float(opts.get("r", opts.get("radius", "0.1"))),
        orientation=int(opts.get("orient", "1")),
        steps=int(opts.get("steps", "256")),
    )


def _cmd_track(args) -> int:
    g = _load_graph_arg(args.graph)
    f = graphs.symanzik_F(g)
    chart = {
        name: Polynomial.const(int(value))
        for name, value in _parse_assignments(args.chart).items()
    }
    f = f.substitute(chart)
    loop = _parse_loop(args.loop)
    basepoint = {name: complex(value)
                 for name, value in _parse_assignments(args.fix).items()}
    fixed_fiber = [e.var for e in g.edges if e.var != args.var and e.var not in chart]
    if fixed_fiber:
        raise ValueError(f"fiber variables {fixed_fiber} not bound by --chart")
    sys_ = tracking.ParametricRootSystem(f, args.var, basepoint, loop)
    marks = [complex(z) for z in args.mark]
    result = tracking.track(sys_, marks, tol=args.tol)
    _emit(result.describe(), args.format)
    return 0


def _cmd_analyze(args) -> int:
    g = _load_graph_arg(args.graph)
    audit = None
    if args.audit:
        audit = variation.check_against_hierarchy(_load_model_arg(args.audit)).describe()
    track_result = None
    if args.track_loop:
        f = graphs.symanzik_F(g).substitute({
            name: Polynomial.const(int(value))
            for name, value in _parse_assignments(args.track_chart).items()
        })
        basepoint = {name: complex(value)
                     for name, value in _parse_assignments(args.track_fix).items()}
        system = tracking.ParametricRootSystem(
            f, args.track_var, basepoint, _parse_loop(args.track_loop)
        )
        marks = [complex(z) for z in args.track_mark]
        track_result = tracking.track(system, marks).describe()
    report = analyze_graph(g, [(w, _split_word(w)) for w in args.check],
                           audit=audit, track_result=track_result)
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def analyze_graph(g: graphs.FeynmanGraph, checks=(), audit=None,
                  track_result=None) -> dict:
    """Chained analysis: Symanzik polynomials, Landau components, hierarchy,
    and oracle verdicts for any requested words."""
    comps = landau.oneloop_landau(g)
    if len(g.edges) == 2:
        comps = landau.bubble_split(comps, g)
    rel = hierarchy.hierarchy_graph(comps)
    words = []
    for _, word in checks:
        verdict = hierarchy.word_vanishes(rel, comps, word)
        words.append({
            "word": list(word),
            "verdict": "forced_zero" if verdict.forced_zero else "unconstrained",
            "reason": verdict.reason,
        })
    return {
        "graph": _graph_summary(g),
        "symanzik": {
            "U": str(graphs.symanzik_U(g)),
            "F": str(graphs.symanzik_F(g)),
        },
        "landau": [c.describe() for c in comps],
        "hierarchy": {
            "nodes": list(rel.nodes),
            "edges": hierarchy.edges_json(rel),
        },
        "words": words,
        "audit": audit,
        "track": track_result,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landauvar",
        description="Landau varieties, hierarchy constraints and variation operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("symanzik", help="print the Symanzik polynomials of a graph")
    p.add_argument("graph", help="graph JSON file or builtin name")
    add_format(p)
    p.set_defaults(func=_cmd_symanzik)

    p = sub.add_parser("landau", help="Landau components")
    lsub = p.add_subparsers(dest="action", required=True)
    q = lsub.add_parser("oneloop")
    q.add_argument("graph")
    q.add_argument("--split", action="store_true",
                   help="split threshold branches for two-edge loops")
    add_format(q)
    q = lsub.add_parser("fixture")
    q.add_argument("name")
    add_format(q)
    q = lsub.add_parser("eliminate")
    q.add_argument("graph")
    q.add_argument("--chart", required=True, help="e.g. x3=1")
    add_format(q)
    p.set_defaults(func=_cmd_landau)

    p = sub.add_parser("hierarchy", help="compatibility relation and oracle")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("--fixture")
    src.add_argument("--model")
    src.add_argument("--aomoto", type=int)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--check", action="append", default=[],
                   help="word=id1,id2,... in application order")
    add_format(p)
    p.set_defaults(func=_cmd_hierarchy)

    p = sub.add_parser("homrank", help="local homology rank of a pinch model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--I", default="")
    p.add_argument("--J", default="")
    p.add_argument("--K", default="")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--variant", choices=["open", "closed"], default="open")
    p.set_defaults(func=_cmd_homrank)

    p = sub.add_parser("signword", help="normalize an operator word")
    p.add_argument("word", help='e.g. "d1 p2 d3:r=2"')
    add_format(p)
    p.set_defaults(func=_cmd_signword)

    p = sub.add_parser("variation", help="variation operator models")
    vsub = p.add_subparsers(dest="action", required=True)
    q = vsub.add_parser("table")
    q.add_argument("model")
    add_format(q)
    q = vsub.add_parser("compose")
    q.add_argument("model")
    q.add_argument("word", help="w=id1,id2,... in application order")
    add_format(q)
    q = vsub.add_parser("audit")
    q.add_argument("model")
    q.add_argument("--max-len", type=int, default=4)
    add_format(q)
    p.set_defaults(func=_cmd_variation)

    p = sub.add_parser("aomoto", help="Aomoto polylogarithm structure")
    asub = p.add_subparsers(dest="action", required=True)
    for name in ("symbol", "components", "hierarchy"):
        q = asub.add_parser(name)
        q.add_argument("--n", type=int, required=True)
        if name == "hierarchy":
            q.add_argument("--dot", action="store_true")
        add_format(q)
    p.set_defaults(func=_cmd_aomoto)

    p = sub.add_parser("track", help="numerical root tracking along a loop")
    p.add_argument("graph")
    p.add_argument("--chart", required=True, help="e.g. x1=1")
    p.add_argument("--var", required=True, help="fiber variable to track")
    p.add_argument("--loop", required=True, help="param:center=9,r=0.1[,steps=256]")
    p.add_argument("--fix", default="", help="frozen parameters, name=value,...")
    p.add_argument("--mark", action="append", default=[],
                   help="marked point for winding numbers")
    p.add_argument("--tol", type=float, default=1e-10)
    add_format(p)
    p.set_defaults(func=_cmd_track)

    p = sub.add_parser("analyze", help="full report for a graph")
    p.add_argument("graph")
    p.add_argument("--check", action="append", default=[])
    p.add_argument("--audit", help="also audit a variation model against its hierarchy")
    p.add_argument("--track-loop", help="also track roots: param:center=9,r=0.1")
    p.add_argument("--track-chart", default="", help="chart for --track-loop, e.g. x1=1")
    p.add_argument("--track-var", default="", help="fiber variable for --track-loop")
    p.add_argument("--track-fix", default="", help="frozen parameters for --track-loop")
    p.add_argument("--track-mark", action="append", default=[])
    p.set_defaults(func=_cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
