"""Command-line front end.

Every subcommand prints a run report (JSON by default) whose ``result``
payload is deterministic for identical inputs. Exit status: 0 on success
(including "the graph is not geodetic" answers), 1 when an input violates a
command's precondition, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import __version__
from .boundary import (
    DEFAULT_WINDOW,
    busemann_trace,
    find_onion_prefix,
    onion_apexes,
    ray_extend,
    rebase_ray,
    validate_ray_prefix,
)
from .errors import DomainError, InternalInconsistencyError, NotGeodeticError
from .formats import dumps, graph_to_json, load_graph, load_group_spec
from .graph import is_geodetic
from .groups import FAMILIES, cayley_ball, gen_family
from .iec import enumerate_iecs_bruteforce, enumerate_iecs_geodetic
from .rws import (
    check_confluence,
    cross_validate,
    extract_rws,
    format_word,
    normalize,
    parse_rws,
    parse_word,
    words_equal,
)
from .tree_qi import distortion_report, geodesic_spanning_tree, lift_path


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _natural(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _vertex_list(text):
    items = [v.strip() for v in text.split(",")]
    if not all(items):
        raise argparse.ArgumentTypeError(f"empty vertex in list {text!r}")
    return items


def _edge(text):
    parts = text.split(":")
    if len(parts) != 2 or not all(parts):
        raise argparse.ArgumentTypeError(f"expected an edge as u:v, got {text!r}")
    return tuple(parts)


def _save_text(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# --- subcommand handlers: return (payload, input paths) ---------------------


def cmd_gen(args):
    params = {k: getattr(args, k) for k in FAMILIES[args.family][1]}
    missing = [k for k, v in params.items() if v is None]
    if missing:
        raise UsageError(f"family {args.family} needs --{' --'.join(missing)}")
    g = gen_family(args.family, **params)
    payload = {"family": args.family, "params": params, "graph": graph_to_json(g)}
    if args.save:
        _save_text(args.save, dumps(graph_to_json(g)) + "\n")
    return payload, []


def cmd_check_geodetic(args):
    g = load_graph(args.graph)
    return is_geodetic(g).to_json(), [args.graph]


def cmd_iecs(args):
    g = load_graph(args.graph)
    if args.method == "fork":
        inv = enumerate_iecs_geodetic(g)
    else:
        inv = enumerate_iecs_bruteforce(g, args.max_len or len(g))
    return {"method": args.method, **inv.to_json()}, [args.graph]


def cmd_tree_qi(args):
    g = load_graph(args.graph)
    report = is_geodetic(g)
    if not report.geodetic:
        raise NotGeodeticError(report)
    inv = enumerate_iecs_geodetic(g)
    roots = list(g.names) if args.all_roots else [args.root]
    if args.root is None and not args.all_roots:
        raise UsageError("give --root or --all-roots")
    with ThreadPoolExecutor(max_workers=args.jobs) as pool:
        reports = list(pool.map(lambda o: distortion_report(g, o, inv).to_json(), roots))
    payload = reports[0] if len(reports) == 1 and not args.all_roots else {"reports": reports}
    return payload, [args.graph]


def cmd_lift(args):
    g = load_graph(args.graph)
    t = geodesic_spanning_tree(g, args.root)
    lifted = lift_path(g, t, args.path)
    payload = {
        "root": t.root,
        "source_geodesic": list(lifted.source_geodesic),
        "tree_path": list(lifted.tree_path),
        "length": lifted.length,
        "splice_points": list(lifted.splice_points),
        "splice_circuits": [list(c) for c in lifted.splice_circuits],
        "bound": lifted.bound,
    }
    return payload, [args.graph]


def cmd_busemann(args):
    g = load_graph(args.graph)
    ray = validate_ray_prefix(g, args.ray)
    trace = busemann_trace(g, ray, args.x, args.window)
    return {"ray": ray.to_json(), "x": args.x, **trace.to_json()}, [args.graph]


def cmd_rebase(args):
    g = load_graph(args.graph)
    ray = validate_ray_prefix(g, args.ray)
    beta = rebase_ray(g, ray, args.root, args.window)
    return {"input": ray.to_json(), "rebased": beta.to_json(), "window": args.window}, [args.graph]


def cmd_ray_extend(args):
    g = load_graph(args.graph)
    h = ray_extend(g, args.attach, args.length)
    if args.save:
        _save_text(args.save, dumps(graph_to_json(h)) + "\n")
    payload = {"attach": args.attach, "truncation": args.length, "graph": graph_to_json(h)}
    return payload, [args.graph]


def cmd_onion(args):
    g = load_graph(args.graph)
    if is_geodetic(g).geodetic:
        inv = enumerate_iecs_geodetic(g)
    else:
        inv = enumerate_iecs_bruteforce(g, len(g))
    found = find_onion_prefix(g, inv, args.max_depth, args.central)
    payload = {"max_depth": args.max_depth, "onion": None, "apexes": None}
    if found is not None:
        payload["onion"] = found.to_json()
        odd = all(t.length % 2 for t in found.thetas)
        payload["apexes"] = onion_apexes(g, found) if odd else None
    return payload, [args.graph]


def cmd_cayley_ball(args):
    spec = load_group_spec(args.spec)
    ball = cayley_ball(spec, args.radius)
    if args.save:
        _save_text(args.save, dumps(ball.to_json()) + "\n")
    return ball.to_json(), [args.spec]


def cmd_rws_extract(args):
    spec = load_group_spec(args.spec)
    ball = cayley_ball(spec, args.radius)
    r = extract_rws(ball)
    if args.save:
        _save_text(args.save, r.to_text())
    payload = {
        "radius": args.radius,
        "rules": [str(rule) for rule in r.rules],
        "warnings": list(r.warnings),
        "text": r.to_text(),
    }
    return payload, [args.spec]


def _load_rws(path):
    with open(path, encoding="utf-8") as fh:
        return parse_rws(fh.read())


def cmd_rws_check(args):
    r = _load_rws(args.rws)
    return check_confluence(r).to_json(), [args.rws]


def cmd_normalize(args):
    r = _load_rws(args.rws)
    w = parse_word(args.word)
    return {"word": format_word(w), "normal_form": format_word(normalize(r, w))}, [args.rws]


def cmd_wp(args):
    r = _load_rws(args.rws)
    w1, w2 = parse_word(args.word1), parse_word(args.word2)
    return {
        "word1": format_word(w1),
        "word2": format_word(w2),
        "equal": words_equal(r, w1, w2),
    }, [args.rws]


def run_pipeline(spec, radius, samples, seed, max_len=12, cv_radius=None):
    """Ball, geodeticity, IECs, extraction, confluence, cross-validation.

    Returns ``(stages, passed)``; the first failing stage ends the run.
    """
    stages = []

    def stage(name, ok, **detail):
        stages.append({"stage": name, "passed": ok, **detail})
        return ok

    ball = cayley_ball(spec, radius)
    stage("cayley_ball", True, radius=radius, vertices=len(ball.graph), edges=ball.graph.edge_count)
    report = is_geodetic(ball.graph)
    if not stage("geodetic", report.geodetic, report=report.to_json() if not report.geodetic else None):
        return stages, False
    inv = enumerate_iecs_geodetic(ball.graph)
    stage("iecs", True, histogram={str(k): v for k, v in inv.histogram.items()})
    r = extract_rws(ball, inv)
    stage("extract", True, rules=[str(x) for x in r.rules], warnings=list(r.warnings))
    reducing = all(x.length_reducing for x in r.rules)
    if not stage("length_reducing", reducing):
        return stages, False
    conf = check_confluence(r)
    if not stage("confluence", conf.confluent, **conf.to_json()):
        return stages, False
    cv = cross_validate(r, spec, samples, max_len, seed, radius=cv_radius)
    ok = stage("cross_validate", cv.passed, **cv.to_json())
    return stages, ok


def cmd_pipeline(args):
    spec = load_group_spec(args.spec)
    stages, ok = run_pipeline(spec, args.radius, args.samples, args.seed, args.max_len, args.cv_radius)
    return {"passed": ok, "stages": stages}, [args.spec]


class UsageError(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(prog="geodetic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=_positive, default=1, help="worker threads for per-root work")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("gen", cmd_gen, "generate a graph family")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--n", type=_natural)
    p.add_argument("--branching", type=_natural)
    p.add_argument("--depth", type=_natural)
    p.add_argument("--m", type=_natural)
    p.add_argument("--d", type=_natural)
    p.add_argument("--save", help="also write the bare graph JSON here")

    p = add("check-geodetic", cmd_check_geodetic, "test for unique geodesics")
    p.add_argument("graph")

    p = add("iecs", cmd_iecs, "enumerate isometrically embedded circuits")
    p.add_argument("graph")
    p.add_argument("--method", choices=("fork", "bruteforce"), default="fork")
    p.add_argument("--max-len", type=_positive)

    p = add("tree-qi", cmd_tree_qi, "spanning-tree distortion certificate")
    p.add_argument("graph")
    p.add_argument("--root")
    p.add_argument("--all-roots", action="store_true")

    p = add("lift", cmd_lift, "lift a geodesic into the spanning tree")
    p.add_argument("graph")
    p.add_argument("--root", required=True)
    p.add_argument("--path", type=_vertex_list, required=True, help="comma-separated geodesic")

    p = add("busemann", cmd_busemann, "Busemann trace along a ray prefix")
    p.add_argument("graph")
    p.add_argument("--ray", type=_vertex_list, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--window", type=_positive, default=DEFAULT_WINDOW)

    p = add("rebase", cmd_rebase, "rebase a ray prefix at another vertex")
    p.add_argument("graph")
    p.add_argument("--ray", type=_vertex_list, required=True)
    p.add_argument("--root", required=True)
    p.add_argument("--window", type=_positive, default=DEFAULT_WINDOW)

    p = add("ray-extend", cmd_ray_extend, "glue truncated rays onto vertices")
    p.add_argument("graph")
    p.add_argument("--attach", type=_vertex_list, required=True)
    p.add_argument("--length", type=_positive, required=True)
    p.add_argument("--save")

    p = add("onion", cmd_onion, "search for an onion prefix")
    p.add_argument("graph")
    p.add_argument("--max-depth", type=_natural, default=4)
    p.add_argument("--central", type=_edge, action="append", help="restrict central edges (u:v), repeatable")

    p = add("cayley-ball", cmd_cayley_ball, "Cayley graph ball of a free product")
    p.add_argument("spec")
    p.add_argument("--radius", type=_positive, required=True)
    p.add_argument("--save")

    p = add("rws-extract", cmd_rws_extract, "extract the rewriting system from a Cayley ball")
    p.add_argument("spec")
    p.add_argument("--radius", type=_positive, required=True)
    p.add_argument("--save", help="write the rewriting system text file here")

    p = add("rws-check", cmd_rws_check, "critical-pair confluence check")
    p.add_argument("rws")

    p = add("normalize", cmd_normalize, "normal form of a word")
    p.add_argument("rws")
    p.add_argument("--word", required=True)

    p = add("wp", cmd_wp, "decide equality of two words")
    p.add_argument("rws")
    p.add_argument("word1")
    p.add_argument("word2")

    p = add("pipeline", cmd_pipeline, "extract and verify a rewriting system end to end")
    p.add_argument("spec")
    p.add_argument("--radius", type=_positive, required=True)
    p.add_argument("--samples", type=_natural, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-len", type=_natural, default=12)
    p.add_argument("--cv-radius", type=_positive, help="ball radius for the length oracle (default max-len)")
    return parser


def _digest(paths):
    h = hashlib.sha256()
    for path in paths:
        with open(path, "rb") as fh:
            h.update(hashlib.sha256(fh.read()).digest())
    return h.hexdigest()


def render_text(value, indent=0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(value, list):
        if all(not isinstance(v, (dict, list)) for v in value) and not any(" " in str(v) for v in value):
            return f"{pad}{' '.join(map(str, value))}"
        lines = []
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
        return "\n".join(lines)
    return f"{pad}{value}"


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        payload, inputs = args.handler(args)
        status = 0
        if args.command == "pipeline" and not payload["passed"]:
            status = 1
    except UsageError as exc:
        parser.error(str(exc))
    except (DomainError, InternalInconsistencyError, OSError) as exc:
        print(f"geodetic {args.command}: {exc}", file=sys.stderr)
        return 1
    report = {
        "tool": "geodetic",
        "version": __version__,
        "command": argv,
        "input_digest": _digest(inputs),
        "result": payload,
        "duration_s": round(time.perf_counter() - started, 6),
    }
    text = dumps(report) if args.format == "json" else render_text(report)
    if args.output:
        _save_text(args.output, text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
