"""Command-line entry point.

    graphcons graph gen       --kind ring --n 10 --out DIR
    graphcons graph matrices  --graph DIR/edges.csv --which adjacency,laplacian --out DIR
    graphcons consensus run   --config run.json --out DIR
    graphcons central run     --config run.json --out DIR
    graphcons root find       --method all --function paper
    graphcons dist sample     --kind normal --param mu=0 --param sigma=1 --count 1000

Every command reads an optional JSON ``--config``; explicit flags win over
config fields. All randomness comes from the seeds in the resolved config.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import centralized, consensus, distributions, graph, io, matrices, rootfind, svg
from .distributions import DistributionSpec
from .errors import GraphconsError, InvalidArgument

log = logging.getLogger("graphcons")

GRAPH_KINDS = ("ring", "complete", "regular", "erdos-renyi", "from-adjacency", "from-edgelist")
MATRIX_KINDS = ("adjacency", "incidence", "laplacian", "normalized-laplacian", "walk-sum")


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise InvalidArgument(f"{path}: config must be a JSON object")
    return data


def _pick(args, cfg: dict, name: str, default=None, key: str | None = None):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return cfg.get(key or name, default)


def _out_dir(args, cfg) -> Path:
    out = Path(_pick(args, cfg, "out", "out"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(path: Path, text: str):
    path.write_text(text, encoding="utf-8")
    log.info("wrote %s", path)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _read_graph(path, directed: bool) -> graph.Graph:
    text = Path(path).read_text(encoding="utf-8")
    first = text.lstrip().split("\n", 1)[0].strip().lower().replace(" ", "")
    if first.startswith("source,target"):
        return io.graph_from_edge_list_csv(text, directed)
    return io.graph_from_adjacency_csv(text, directed)


# -- graph ------------------------------------------------------------------


def graph_summary(g: graph.Graph) -> dict:
    deg = graph.degree_sequence(g)
    out = {
        "n": g.n,
        "num_edges": g.num_edges,
        "directed": g.directed,
        "degree": {
            "min": min(deg) if deg else 0,
            "max": max(deg) if deg else 0,
            "mean": sum(deg) / len(deg) if deg else 0.0,
            "sum": sum(deg),
        },
    }
    if g.directed:
        out["strongly_connected_components"] = len(graph.strongly_connected_components(g))
    else:
        out["connected"] = graph.is_connected(g)
    return out


def cmd_graph_gen(args) -> int:
    cfg = _load_config(args.config)
    kind = _pick(args, cfg, "kind")
    if kind not in GRAPH_KINDS:
        raise InvalidArgument(f"--kind must be one of {GRAPH_KINDS}, got {kind!r}")
    seed = int(_pick(args, cfg, "seed", 0))
    n = _pick(args, cfg, "n")
    directed = bool(_pick(args, cfg, "directed", False))
    if kind in ("ring", "complete", "regular", "erdos-renyi") and n is None:
        raise InvalidArgument(f"--n is required for kind {kind}")
    if kind == "ring":
        g = graph.make_ring(int(n))
    elif kind == "complete":
        g = graph.make_complete(int(n))
    elif kind == "regular":
        g = graph.make_regular(int(n), int(_pick(args, cfg, "k", 2)), seed)
    elif kind == "erdos-renyi":
        g = graph.make_erdos_renyi(int(n), float(_pick(args, cfg, "p", 0.5)), seed, directed=directed)
    else:
        src = _pick(args, cfg, "input")
        if src is None:
            raise InvalidArgument(f"--input is required for kind {kind}")
        text = Path(src).read_text(encoding="utf-8")
        if kind == "from-adjacency":
            g = io.graph_from_adjacency_csv(text, directed)
        else:
            g = io.graph_from_edge_list_csv(text, directed)
    out = _out_dir(args, cfg)
    _write(out / "edges.csv", io.edge_list_to_csv(g))
    summary = {"kind": kind, "seed": seed, **graph_summary(g)}
    _write(out / "summary.json", _dump_json(summary))
    return 0


def cmd_graph_matrices(args) -> int:
    cfg = _load_config(args.config)
    src = _pick(args, cfg, "graph")
    if src is None:
        raise InvalidArgument("--graph is required")
    directed = bool(_pick(args, cfg, "directed", False))
    g = _read_graph(src, directed)
    which = _pick(args, cfg, "which", "adjacency")
    if isinstance(which, str):
        which = [w.strip() for w in which.split(",") if w.strip()]
    bad = [w for w in which if w not in MATRIX_KINDS]
    if bad:
        raise InvalidArgument(f"unknown matrix kinds {bad}; expected {MATRIX_KINDS}")
    k = int(_pick(args, cfg, "k", 2))
    labels = [g.label(i) for i in range(g.n)] if _pick(args, cfg, "labels", False) else None
    out = _out_dir(args, cfg)
    failed = []
    for name in which:
        try:
            if name == "adjacency":
                m, fname = matrices.adjacency_matrix(g), "adjacency.csv"
            elif name == "incidence":
                m, fname = matrices.incidence_matrix(g), "incidence.csv"
            elif name == "laplacian":
                m, fname = matrices.laplacian(g), "laplacian.csv"
            elif name == "normalized-laplacian":
                m, fname = matrices.laplacian(g, normalized=True), "normalized_laplacian.csv"
            else:
                m, fname = matrices.walk_count_sum(g, k), f"walk_sum_k{k}.csv"
        except GraphconsError as exc:
            print(f"error: {name}: {exc}", file=sys.stderr)
            failed.append(name)
            continue
        cols = labels if name != "incidence" or labels is None else [
            f"{g.label(u)}-{g.label(v)}" for u, v, _ in g.edges]
        _write(out / fname, io.matrix_to_csv(m, labels, cols))
    if failed:
        print(f"error: not written: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


# -- consensus ----------------------------------------------------------------


def _spec(value, default_kind: str) -> DistributionSpec:
    if value is None:
        return DistributionSpec.from_dict({"kind": default_kind})
    if isinstance(value, str):
        value = json.loads(value) if value.strip().startswith("{") else {"kind": value}
    return DistributionSpec.from_dict(value)


def resolve_consensus_config(args, cfg: dict) -> dict:
    seed = getattr(args, "seed", None)
    return {
        "n": int(cfg.get("n", consensus.DEFAULT_N)),
        "p": float(cfg.get("p", consensus.DEFAULT_P)),
        "graph_seed": int(seed if seed is not None else cfg.get("graph_seed", 0)),
        "value_seed": int(seed if seed is not None else cfg.get("value_seed", 0)),
        "distribution": _spec(cfg.get("distribution"), "uniform").to_dict(),
        "tolerance": float(cfg.get("tolerance", consensus.DEFAULT_TOLERANCE)),
        "max_iters": int(cfg.get("max_iters", consensus.DEFAULT_MAX_ITERS)),
        "lazy": bool(cfg.get("lazy", False)),
    }


def trace_to_csv(values: np.ndarray) -> str:
    n = values.shape[1]
    lines = ["iteration," + ",".join(f"node_{i}" for i in range(n))]
    for t, row in enumerate(values):
        lines.append(f"{t}," + ",".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def degree_stats_to_csv(stats: consensus.DegreeStatistics) -> str:
    lines = ["degree,count,cumulative"]
    lines += [f"{d},{c},{cum}" for (d, c), (_, cum) in zip(stats.histogram, stats.cumulative)]
    return "\n".join(lines) + "\n"


def cmd_consensus_run(args) -> int:
    cfg = resolve_consensus_config(args, _load_config(args.config))
    spec = DistributionSpec.from_dict(cfg["distribution"])
    g, used_seed = consensus.sample_connected_graph(cfg["n"], cfg["p"], cfg["graph_seed"])
    trace = consensus.run_consensus(g, spec, cfg["value_seed"], cfg["max_iters"], cfg["tolerance"],
                                    cfg["lazy"], graph_seed=used_seed)
    stats = consensus.degree_statistics(g)
    out = _out_dir(args, {})
    _write(out / "trace.csv", trace_to_csv(trace.values))
    _write(out / "degree_stats.csv", degree_stats_to_csv(stats))
    _write(out / "edges.csv", io.edge_list_to_csv(g))
    _write(out / "consensus.svg", svg.line_chart(trace.values, f"Distributed averaging, {spec}"))
    _write(out / "degree_histogram.svg", svg.bar_chart(stats.histogram, "Histogram of node degree",
                                                       "degree"))
    _write(out / "cumulative_frequency.svg",
           svg.scatter_chart(stats.cumulative, "Cumulative frequency", "degree", "nodes"))
    result = {
        "config": cfg,
        "graph_seed_used": used_seed,
        "num_edges": g.num_edges,
        "converged": trace.converged,
        "consensus_value": trace.consensus_value,
        "iterations_run": trace.iterations_run,
        "initial_mean": float(trace.values[0].mean()),
        "degree_weighted_average": consensus.degree_weighted_average(g, trace.values[0]),
    }
    _write(out / "run.json", _dump_json(result))
    if not trace.converged:
        log.warning("no consensus within %d iterations", cfg["max_iters"])
    return 0


# -- central -----------------------------------------------------------------


def resolve_central_config(args, cfg: dict) -> dict:
    seed = getattr(args, "seed", None)
    both = cfg.get("distribution")
    spec_x = _spec(cfg.get("spec_x", both), "normal")
    spec_y = _spec(cfg.get("spec_y", both if both is not None else cfg.get("spec_x")), "normal")
    return {
        "spec_x": spec_x.to_dict(),
        "spec_y": spec_y.to_dict(),
        "initial_count": int(cfg.get("initial_count", 100)),
        "batch_size": int(cfg.get("batch_size", 1000)),
        "iterations": int(cfg.get("iterations", 20)),
        "snapshots": [int(s) for s in cfg.get("snapshots", centralized.DEFAULT_SNAPSHOTS)],
        "seed": int(seed if seed is not None else cfg.get("seed", 0)),
        "bins": int(cfg.get("bins", centralized.DEFAULT_BINS)),
    }


def cmd_central_run(args) -> int:
    cfg = resolve_central_config(args, _load_config(args.config))
    snaps = centralized.run_accretion(
        DistributionSpec.from_dict(cfg["spec_x"]), DistributionSpec.from_dict(cfg["spec_y"]),
        cfg["initial_count"], cfg["batch_size"], cfg["iterations"], cfg["seed"], cfg["snapshots"],
        cfg["bins"])
    drift = centralized.center_stability(snaps) if len(snaps) > 1 else [0.0]
    out = _out_dir(args, {})
    rows = ["iteration,point_count,center_x,center_y,drift"]
    for snap, d in zip(snaps, drift):
        t, st, grid = snap.iteration, snap.state, snap.grid
        pts = "\n".join(f"{x!r},{y!r}" for x, y in st.points.tolist())
        _write(out / f"points_{t:03d}.csv", "x,y\n" + pts + "\n")
        _write(out / f"density_{t:03d}.csv", io.matrix_to_csv(grid.counts))
        _write(out / f"density_{t:03d}.json", _dump_json({
            "iteration": t, "x_edges": grid.x_edges.tolist(), "y_edges": grid.y_edges.tolist(),
            "total": grid.total}))
        _write(out / f"snapshot_{t:03d}.svg",
               svg.density_panel(grid.x_edges, grid.y_edges, grid.counts,
                                 f"After {t} iteration{'s' if t != 1 else ''}", st.center))
        rows.append(f"{t},{st.count},{st.center[0]!r},{st.center[1]!r},{d!r}")
    _write(out / "snapshots.csv", "\n".join(rows) + "\n")
    _write(out / "run.json", _dump_json({"config": cfg}))
    return 0


# -- root ---------------------------------------------------------------------


def cmd_root_find(args) -> int:
    cfg = _load_config(args.config)
    fname = _pick(args, cfg, "function", "paper")
    if fname not in rootfind.BUILTIN:
        raise InvalidArgument(f"--function must be one of {sorted(rootfind.BUILTIN)}")
    fn = rootfind.BUILTIN[fname]
    method = _pick(args, cfg, "method", "all")
    a = float(_pick(args, cfg, "a", 4.0 if fname == "paper" else 1.0))
    b = float(_pick(args, cfg, "b", 5.0 if fname == "paper" else 2.0))
    tol = float(_pick(args, cfg, "tol", 1e-6))
    max_iters = int(_pick(args, cfg, "max_iters", 100))
    p0 = _pick(args, cfg, "p0")
    p1 = _pick(args, cfg, "p1")
    if method == "all":
        conf = rootfind.MethodConfig(a=a, b=b, p0=p0, tol=tol, max_iters=max_iters,
                                     secant_p0=p0, secant_p1=p1)
        reports = rootfind.compare_methods(fn, conf)
    elif method in rootfind.METHODS:
        mid = a + (b - a) / 2
        start = float(p0) if p0 is not None else mid
        if method == "bisection":
            rep = rootfind.bisection(fn, a, b, tol, max_iters)
        elif method == "secant":
            rep = rootfind.secant(fn, float(p0) if p0 is not None else a,
                                  float(p1) if p1 is not None else b, tol, max_iters)
        elif method == "newton":
            rep = rootfind.newton(fn, start, tol, max_iters)
        else:
            rep = rootfind.fixed_point(fn.g or (lambda x: x - fn.f(x)), start, tol, max_iters)
        reports = [rep]
    else:
        raise InvalidArgument(f"--method must be 'all' or one of {rootfind.METHODS}")
    table = rootfind.format_table(reports)
    sys.stdout.write(table)
    out = _pick(args, cfg, "out")
    if out is not None:
        out = _out_dir(args, cfg)
        _write(out / "roots.csv", rootfind.reports_to_csv(reports))
        _write(out / "roots.txt", table)
    return 0


# -- dist -------------------------------------------------------------------------


def _parse_params(items) -> dict:
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InvalidArgument(f"--param expects name=value, got {item!r}")
        params[key.strip()] = float(value)
    return params


def cmd_dist_sample(args) -> int:
    cfg = _load_config(args.config)
    if args.kind is not None:
        spec = DistributionSpec.from_dict({"kind": args.kind, **_parse_params(args.param)})
    else:
        spec = _spec(cfg.get("distribution"), "uniform")
    count = int(_pick(args, cfg, "count", 1000))
    seed = int(_pick(args, cfg, "seed", 0))
    draws = distributions.sample(spec, count, seed)
    mean, var = distributions.analytic_moments(spec)
    out = _out_dir(args, cfg)
    _write(out / "samples.csv", "value\n" + "\n".join(repr(float(x)) for x in draws) + "\n")
    _write(out / "moments.json", _dump_json({
        "distribution": spec.to_dict(), "count": count, "seed": seed,
        "analytic": {"mean": mean, "variance": var},
        "sample": {"mean": float(draws.mean()), "variance": float(draws.var(ddof=1)) if count > 1 else 0.0},
    }))
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, help="seed for every random draw")
    common.add_argument("--out", help="output directory")
    common.add_argument("--config", help="JSON run configuration")

    parser = argparse.ArgumentParser(prog="graphcons", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log each file written")
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("graph", help="graph generation and matrices").add_subparsers(
        dest="action", required=True)
    gen = g.add_parser("gen", parents=[common], help="build a graph and write its edge list")
    gen.add_argument("--kind", choices=GRAPH_KINDS)
    gen.add_argument("--n", type=int)
    gen.add_argument("--k", type=int, help="degree for --kind regular")
    gen.add_argument("--p", type=float, help="edge probability for --kind erdos-renyi")
    gen.add_argument("--input", help="source file for from-adjacency / from-edgelist")
    gen.add_argument("--directed", action="store_true", default=None)
    gen.set_defaults(func=cmd_graph_gen)

    mat = g.add_parser("matrices", parents=[common], help="export matrix representations")
    mat.add_argument("--graph", help="edge-list or adjacency CSV")
    mat.add_argument("--which", help=f"comma list of {','.join(MATRIX_KINDS)}")
    mat.add_argument("--k", type=int, help="walk length bound for walk-sum")
    mat.add_argument("--directed", action="store_true", default=None)
    mat.add_argument("--labels", action="store_true", default=None, help="write label row/column")
    mat.set_defaults(func=cmd_graph_matrices)

    c = groups.add_parser("consensus", help="distributed averaging").add_subparsers(
        dest="action", required=True)
    run = c.add_parser("run", parents=[common], help="run one consensus experiment")
    run.set_defaults(func=cmd_consensus_run)

    ce = groups.add_parser("central", help="centralized accretion").add_subparsers(
        dest="action", required=True)
    run = ce.add_parser("run", parents=[common], help="run one accretion experiment")
    run.set_defaults(func=cmd_central_run)

    r = groups.add_parser("root", help="root finding").add_subparsers(dest="action", required=True)
    find = r.add_parser("find", parents=[common], help="run root finders on a built-in function")
    find.add_argument("--method", choices=("all",) + rootfind.METHODS)
    find.add_argument("--function", choices=sorted(rootfind.BUILTIN))
    find.add_argument("--a", type=float)
    find.add_argument("--b", type=float)
    find.add_argument("--p0", type=float)
    find.add_argument("--p1", type=float)
    find.add_argument("--tol", type=float)
    find.add_argument("--max-iters", dest="max_iters", type=int)
    find.set_defaults(func=cmd_root_find)

    d = groups.add_parser("dist", help="distribution sampling").add_subparsers(
        dest="action", required=True)
    samp = d.add_parser("sample", parents=[common], help="draw seeded samples")
    samp.add_argument("--kind", choices=distributions.KINDS)
    samp.add_argument("--param", action="append", help="name=value, repeatable")
    samp.add_argument("--count", type=int)
    samp.set_defaults(func=cmd_dist_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphconsError, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
