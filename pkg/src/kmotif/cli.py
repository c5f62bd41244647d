"""Command-line entry point.

Exit codes: 0 success, 1 audit found violations, 2 bad arguments,
3 input/output failure, 4 algorithmic failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import statistics
import sys
import time
from pathlib import Path

from . import __version__
from .graph import EdgeListError, Graph, LoadedGraph, induced_subgraph, load_edge_list, parse_edge_lines, write_edge_list
from .kcc import decompose
from .metrics import cii_edges, evaluate
from .mincut import DisconnectedGraphError
from .motif import CATALOG, enumerate_motifs
from .pipeline import MODES, ChiefConfig, ClusteringError, run_chief
from .spectral import ConvergenceError
from .synth import LARGE_PRESETS, PRESETS, SynthSpec, generate, preset
from .verify import check_laplacian_perturbation

log = logging.getLogger("kmotif")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_ALGO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _setup_logging() -> None:
    level = os.environ.get("CHIEF_LOG", "error").upper()
    if level not in ("ERROR", "INFO", "DEBUG"):
        level = "ERROR"
    logging.basicConfig(level=getattr(logging, level), format="%(levelname)s %(name)s: %(message)s")


def _positive(kind):
    def parse(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return parse


def _read_counts(path: str) -> dict[str, int]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for no, line in enumerate(fh, 1):
            tok = line.split("#", 1)[0].split()
            if not tok:
                continue
            if len(tok) != 2:
                raise EdgeListError(f"{path}:{no}: expected 'author count'")
            out[tok[0]] = int(tok[1])
    return out


def _read_co_counts(path: str):
    with open(path, encoding="utf-8") as fh:
        for no, line in enumerate(fh, 1):
            tok = line.split("#", 1)[0].split()
            if not tok:
                continue
            if len(tok) != 3:
                raise EdgeListError(f"{path}:{no}: expected 'author author co_papers'")
            yield tok[0], tok[1], int(tok[2])


def _load(args) -> LoadedGraph:
    papers = getattr(args, "papers", None)
    co = getattr(args, "co_papers", None)
    if bool(papers) != bool(co):
        raise UsageError("--papers and --co-papers must be given together")
    if papers:
        rows = cii_edges(_read_counts(papers), _read_co_counts(co))
        lines = [f"{a}\t{b}\t{w!r}" for a, b, w in rows]
        return parse_edge_lines(lines, weighted=True, source=co)
    loaded = load_edge_list(args.input, weighted=getattr(args, "weighted", False))
    if loaded.self_loops:
        log.info("dropped %d self-loop line(s)", loaded.self_loops)
    return loaded


def _config(args) -> ChiefConfig:
    try:
        return ChiefConfig(
            motif=args.motif,
            k=args.k,
            mode=getattr(args, "mode", "auto"),
            min_cluster_size=getattr(args, "min_cluster", None),
            max_conductance=getattr(args, "max_conductance", 0.5),
            weight_threshold=getattr(args, "weight_threshold", 0.0),
            weighted=getattr(args, "weighted", False) or bool(getattr(args, "papers", None)),
            threads=getattr(args, "threads", None) or os.cpu_count() or 1,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "NA"
    return repr(float(x))


def cmd_cluster(args) -> int:
    cfg = _config(args)
    t = time.perf_counter()
    g, vm, _ = _load(args)
    loaded = time.perf_counter()
    cs, stats = run_chief(g, cfg)
    stats.add_time("load", loaded - t)
    rows = []
    for cid, c in enumerate(cs.clusters):
        for v in c.members.tolist():
            rows.append(f"{vm.label(v)}\t{cid}\t{_fmt(c.conductance)}")
    out = Path(args.out)
    out.write_text("external_id\tcluster_id\tconductance\n" + "".join(r + "\n" for r in rows), encoding="utf-8")
    unc = Path(args.unclustered) if args.unclustered else out.with_name(out.name + ".unclustered")
    unc.write_text("".join(vm.label(v) + "\n" for v in cs.unclustered.tolist()), encoding="utf-8")
    report = {"motif": cfg.motif.id, "k": cfg.k, "seed": args.seed, **stats.as_dict()}
    if args.stats:
        Path(args.stats).write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    print(
        f"mode={stats.mode} pieces={stats.pieces} clusters={stats.clusters} "
        f"unclustered={stats.unclustered} instances={stats.instances} "
        f"time_ms={1000 * (time.perf_counter() - t):.1f}"
    )
    return EXIT_OK


def cmd_kscan(args) -> int:
    if args.k_min > args.k_max:
        raise UsageError("--k-min must not exceed --k-max")
    g, _, _ = _load(args)
    motif = CATALOG[args.motif]
    total_inst = len(enumerate_motifs(g, motif))
    rows = []
    for k in range(args.k_min, args.k_max + 1):
        dec = decompose(g, k, weighted=args.weighted)
        kept = sum(len(enumerate_motifs(induced_subgraph(g, m)[0], motif)) for m in dec.subgraphs)
        met = evaluate(g, dec.subgraphs, weighted=args.weighted)
        rows.append((k, len(dec.subgraphs), len(dec.singletons), met.modularity, met.avg_ccp, met.avg_csp, kept))
    scores = [r[3] for r in rows]
    finite = [s for s in scores if not math.isnan(s)]
    best = max(finite) if finite else None
    lines = ["k\tpieces\tsingletons\tmodularity\tavg_ccp\tavg_csp\tinstances_kept\tinstances_total\tbest"]
    for k, p, s, q, cp, sp, kept in rows:
        flag = "*" if best is not None and q == best else ""
        lines.append(f"{k}\t{p}\t{s}\t{_fmt(q)}\t{_fmt(cp)}\t{_fmt(sp)}\t{kept}\t{total_inst}\t{flag}")
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bench_graph(args) -> Graph:
    if args.input:
        return _load(args).graph
    if args.preset:
        return generate(preset(args.preset, args.seed))
    raise UsageError("bench needs --input or --preset")


def cmd_bench(args) -> int:
    if args.repeat < 1:
        raise UsageError("--repeat must be at least 1")
    g = _bench_graph(args)
    args.mode = "auto"
    cfg = _config(args)
    base_cfg = ChiefConfig(cfg.motif, cfg.k, "baseline", cfg.min_cluster_size, cfg.max_conductance,
                           cfg.weight_threshold, cfg.weighted, cfg.threads)
    times = {"chief": [], "baseline": []}
    results = {}
    for _ in range(args.repeat):
        for name, c in (("chief", cfg), ("baseline", base_cfg)):
            t = time.perf_counter()
            results[name] = run_chief(g, c)
            times[name].append(time.perf_counter() - t)
    med = {name: statistics.median(v) for name, v in times.items()}
    chief_cs, chief_stats = results["chief"]
    base_cs, base_stats = results["baseline"]
    report = {
        "motif": cfg.motif.id,
        "k": cfg.k,
        "mode": chief_stats.mode,
        "repeat": args.repeat,
        "median_s": med,
        "speedup": med["baseline"] / med["chief"] if med["chief"] > 0 else math.inf,
        "instances": {"chief": chief_stats.instances, "baseline": base_stats.instances},
        "clusters": {"chief": chief_stats.clusters, "baseline": base_stats.clusters},
    }
    if chief_stats.mode == "st":
        a = sum(c.conductance or 0.0 for c in chief_cs.clusters)
        b = sum(c.conductance or 0.0 for c in base_cs.clusters)
        report["quality_parity"] = abs(a - b) <= 0.05 * max(abs(a), abs(b), 1e-12)
    print(json.dumps(report, indent=2))
    if chief_stats.instances > base_stats.instances:
        log.error("chief mode enumerated more instances than the baseline")
        return EXIT_ALGO
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.preset:
        if args.preset in LARGE_PRESETS and not args.large:
            raise UsageError(f"preset {args.preset} is large; pass --large to generate it")
        spec = preset(args.preset, args.seed)
    else:
        if args.nv is None or args.rrp is None:
            raise UsageError("give --preset or both --nv and --rrp")
        try:
            spec = SynthSpec(args.nv, args.rrp, args.seed)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    g = generate(spec)
    header = f"synthetic small-world nv={spec.nv} ne={spec.ne} rrp={spec.rrp} seed={spec.seed}"
    write_edge_list(g, args.out, header=header)
    print(f"wrote {g.n} vertices, {g.m} edges to {args.out}")
    return EXIT_OK


def cmd_decompose(args) -> int:
    g, vm, _ = _load(args)
    dec = decompose(g, args.k, weighted=args.weighted)
    lab = dec.labels()
    kinds = ["singleton" if p < 0 else "subgraph" for p in lab.tolist()]
    lines = ["external_id\tpiece_id\tpiece_kind"] + [
        f"{vm.label(v)}\t{lab[v]}\t{kinds[v]}" for v in range(g.n)
    ]
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"k={args.k} pieces={len(dec.subgraphs)} singletons={len(dec.singletons)} "
          f"removed_edges={len(dec.removed_edges)}")
    return EXIT_OK


def cmd_audit(args) -> int:
    src = Path(args.input)
    files = sorted(p for p in src.iterdir() if p.is_file()) if src.is_dir() else [src]
    fields = ["graph", "k", "removed_edges", "lambda_min_A_G", "lambda_min_A_k", "delta", "holds",
              "laplacian_diff", "laplacian_lower", "laplacian_upper", "lower_holds", "upper_holds", "pass"]
    print("\t".join(fields))
    failed = 0
    for path in files:
        g = load_edge_list(path).graph
        for k in args.k:
            rep = check_laplacian_perturbation(g, k).as_dict()
            ok = rep["holds"] and rep["laplacian_holds"]
            failed += not ok
            row = {"graph": path.name, **rep, "pass": ok}
            print("\t".join(str(row[f]) for f in fields))
    print(f"# {failed} failing row(s)", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kmotif", description="Motif clustering on maximal k-edge-connected pieces.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp, required=True):
        sp.add_argument("--input", required=required, help="edge list: 'u v [w]' per line, '#' comments")
        sp.add_argument("--weighted", action="store_true", help="read the third column as an edge weight")

    def motif_flags(sp):
        sp.add_argument("--motif", required=True, type=str.upper, choices=sorted(CATALOG))
        sp.add_argument("--k", type=_positive(int), default=3)
        sp.add_argument("--min-cluster", type=_positive(int), default=None)
        sp.add_argument("--max-conductance", type=float, default=0.5)
        sp.add_argument("--weight-threshold", type=float, default=0.0)
        sp.add_argument("--threads", type=_positive(int), default=None, help="default: available CPUs")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("cluster", help="cluster a graph around a motif")
    graph_input(sp, required=False)
    motif_flags(sp)
    sp.add_argument("--mode", choices=MODES, default="auto")
    sp.add_argument("--papers", help="per-author paper counts: 'author count'")
    sp.add_argument("--co-papers", help="per-pair co-paper counts: 'a b count'; edges weighted by CII")
    sp.add_argument("--out", required=True, help="cluster TSV")
    sp.add_argument("--unclustered", help="unclustered vertex list (default: OUT.unclustered)")
    sp.add_argument("--stats", help="run statistics as JSON")
    sp.set_defaults(func=cmd_cluster)

    sp = sub.add_parser("kscan", help="decompose over a range of k and score each partition")
    graph_input(sp)
    sp.add_argument("--motif", required=True, type=str.upper, choices=sorted(CATALOG))
    sp.add_argument("--k-min", type=_positive(int), required=True)
    sp.add_argument("--k-max", type=_positive(int), required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_kscan)

    sp = sub.add_parser("bench", help="time chief mode against the baseline")
    graph_input(sp, required=False)
    motif_flags(sp)
    sp.add_argument("--preset", choices=sorted(PRESETS))
    sp.add_argument("--repeat", type=int, default=5)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("synth", help="write a synthetic small-world edge list")
    sp.add_argument("--nv", type=int)
    sp.add_argument("--rrp", type=float)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--preset", choices=sorted(PRESETS))
    sp.add_argument("--large", action="store_true", help="allow the 10^5 and 10^6 vertex presets")
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("decompose", help="maximal k-edge-connected pieces")
    graph_input(sp)
    sp.add_argument("--k", type=_positive(int), required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("audit", help="spectral perturbation checks on one file or a directory")
    sp.add_argument("--input", required=True)
    sp.add_argument("--k", type=_positive(int), nargs="+", default=[2, 3, 4])
    sp.set_defaults(func=cmd_audit)
    return p


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "cluster" and not args.input and not args.papers:
        parser.error("cluster needs --input or --papers/--co-papers")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"kmotif: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, EdgeListError) as exc:
        print(f"kmotif: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ClusteringError, ConvergenceError, DisconnectedGraphError, RuntimeError, ValueError) as exc:
        print(f"kmotif: {type(exc).__module__}.{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ALGO


if __name__ == "__main__":
    sys.exit(main())
