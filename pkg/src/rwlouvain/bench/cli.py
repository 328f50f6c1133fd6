"""Command-line entry point: ``rwlouvain {generate,detect,eval,bench}``.

Exit status is 0 on success, 1 for bad input (arguments, files, specs) and 2
when an algorithm fails on otherwise valid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from pathlib import Path

import yaml

from ..constants import DEFAULT_MIN_GAIN
from ..gen import GaussianPartitionSpec, PlantedSpec, gaussian_random_partition, planted_l_partition
from ..quality import modularity, nmi
from .harness import ALGORITHMS, ExperimentError, ExperimentSpec, detect, emit_csv, run_experiment, spec_metadata
from .io import format_partition, load_edge_list, read_partition, write_edge_list, write_partition

EXIT_OK, EXIT_INPUT, EXIT_ALGORITHM = 0, 1, 2

log = logging.getLogger("rwlouvain")


class InputError(Exception):
    pass


class AlgorithmFailure(Exception):
    pass


def _algo_list(values) -> list[str]:
    out = []
    for v in values or []:
        out.extend(a.strip() for a in v.split(",") if a.strip())
    bad = [a for a in out if a not in ALGORITHMS]
    if bad:
        raise InputError(f"unknown algorithm(s) {bad}; choose from {', '.join(ALGORITHMS)}")
    return out


def _add_algo_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--t", type=int, default=None, help="walk length (default 15)")
    p.add_argument("--variant", type=int, choices=(1, 2), default=None, help="rwgp variant; 2 adds two-way refinement")
    p.add_argument("--lazy-alpha", type=float, default=None, help="walk laziness in [0, 1)")
    p.add_argument("--min-gain", type=float, default=None, help="stop once a level gains no more than this")
    p.add_argument("--seed", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rwlouvain", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a graph with planted communities")
    gen.add_argument("model", choices=("planted", "gaussian"))
    gen.add_argument("--l", type=int, default=20, help="planted: number of groups")
    gen.add_argument("--g", type=int, default=10, help="planted: group size")
    gen.add_argument("--N", type=int, default=500, help="gaussian: vertex count")
    gen.add_argument("--m-size", type=float, default=25.0, help="gaussian: mean community size")
    gen.add_argument("--sigma", type=float, default=2.5, help="gaussian: community size standard deviation")
    gen.add_argument("--p-in", type=float, required=True)
    gen.add_argument("--p-out", type=float, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output prefix; writes PREFIX.edges and PREFIX.truth")

    det = sub.add_parser("detect", help="find communities in one graph")
    det.add_argument("graph", help="edge-list file, or 'karate'")
    det.add_argument("--algo", action="append", help=f"one of {', '.join(ALGORITHMS)} (default rwgp-louvain)")
    _add_algo_flags(det)
    det.add_argument("--out", help="write the partition here instead of stdout")

    ev = sub.add_parser("eval", help="score a partition file")
    ev.add_argument("graph", help="edge-list file, or 'karate'")
    ev.add_argument("partition")
    ev.add_argument("--truth", help="ground-truth partition file; adds NMI")

    bench = sub.add_parser("bench", help="run an experiment grid and write CSV")
    bench.add_argument("spec", nargs="?", help="YAML or JSON experiment file (one spec or a list under 'experiments')")
    bench.add_argument("--generator", choices=("planted", "gaussian", "file"))
    bench.add_argument("--graph", help="edge-list path for --generator file")
    bench.add_argument("--l", type=int)
    bench.add_argument("--g", type=int)
    bench.add_argument("--N", type=int)
    bench.add_argument("--m-size", type=float)
    bench.add_argument("--sigma", type=float)
    bench.add_argument("--p-in", type=float)
    bench.add_argument("--p-out", type=float)
    bench.add_argument("--algo", action="append")
    bench.add_argument("--trials", type=int)
    bench.add_argument("--id")
    _add_algo_flags(bench)
    bench.add_argument("--out", default="-", help="CSV destination (default stdout)")
    bench.add_argument("--timing", action="store_true", help="fill the wall_time_ms column (output then varies run to run)")
    return parser


def _algo_kwargs(args) -> dict:
    kw = {
        "t": args.t if args.t is not None else 15,
        "variant": args.variant if args.variant is not None else 2,
        "laziness": args.lazy_alpha if args.lazy_alpha is not None else 0.0,
        "min_gain": args.min_gain if args.min_gain is not None else DEFAULT_MIN_GAIN,
        "seed": args.seed if args.seed is not None else 0,
    }
    if kw["t"] < 1:
        raise InputError("--t must be at least 1")
    if not 0.0 <= kw["laziness"] < 1.0:
        raise InputError("--lazy-alpha must lie in [0, 1)")
    return kw


def cmd_generate(args) -> int:
    try:
        if args.model == "planted":
            lg = planted_l_partition(PlantedSpec(l=args.l, g=args.g, p_in=args.p_in, p_out=args.p_out, seed=args.seed))
            header = f"planted l={args.l} g={args.g} p_in={args.p_in} p_out={args.p_out} seed={args.seed}"
        else:
            lg = gaussian_random_partition(
                GaussianPartitionSpec(N=args.N, m_size=args.m_size, sigma=args.sigma,
                                      p_in=args.p_in, p_out=args.p_out, seed=args.seed)
            )
            header = (f"gaussian N={args.N} m_size={args.m_size} sigma={args.sigma} "
                      f"p_in={args.p_in} p_out={args.p_out} seed={args.seed}")
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    write_edge_list(f"{args.out}.edges", lg.graph, header=header)
    write_partition(f"{args.out}.truth", lg.truth)
    print(f"wrote {args.out}.edges ({lg.graph.n} vertices, {lg.graph.num_edges} edges) and {args.out}.truth")
    return EXIT_OK


def cmd_detect(args) -> int:
    algos = _algo_list(args.algo) or ["rwgp-louvain"]
    if len(algos) != 1:
        raise InputError("detect takes exactly one --algo")
    kw = _algo_kwargs(args)
    loaded = load_edge_list(args.graph)
    try:
        part = detect(loaded.graph, algos[0], **kw)
    except Exception as exc:  # noqa: BLE001 - any failure on loaded input is an algorithm failure
        raise AlgorithmFailure(f"{algos[0]}: {exc}") from exc
    q = modularity(loaded.graph, part)
    text = f"# algorithm={algos[0]} communities={part.k} modularity={q:.7g}\n" + format_partition(part, loaded.labels)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"modularity={q:.7g} communities={part.k}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_eval(args) -> int:
    loaded = load_edge_list(args.graph)
    part = read_partition(args.partition, loaded.labels)
    print(f"modularity={modularity(loaded.graph, part):.7g}")
    print(f"communities={part.k}")
    if args.truth:
        truth = read_partition(args.truth, loaded.labels)
        print(f"nmi={nmi(truth.assign, part.assign):.7g}")
    return EXIT_OK


def _load_spec_file(path: str) -> list[dict]:
    text = Path(path).read_text(encoding="utf-8")
    data = json.loads(text) if path.endswith(".json") else yaml.safe_load(text)
    if isinstance(data, dict) and "experiments" in data:
        data = data["experiments"]
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not all(isinstance(d, dict) for d in data):
        raise InputError(f"{path}: expected a mapping or a list of mappings")
    return data


def _bench_specs(args) -> list[ExperimentSpec]:
    entries = _load_spec_file(args.spec) if args.spec else [{}]
    overrides = {
        "id": args.id,
        "generator": args.generator,
        "trials": args.trials,
        "seed_base": args.seed,
        "t": args.t,
        "variant": args.variant,
        "laziness": args.lazy_alpha,
        "min_gain": args.min_gain,
    }
    algos = _algo_list(args.algo)
    params = {"l": args.l, "g": args.g, "N": args.N, "m_size": args.m_size, "sigma": args.sigma,
              "p_in": args.p_in, "p_out": args.p_out, "path": args.graph}
    specs = []
    for i, entry in enumerate(entries):
        entry = dict(entry)
        entry.setdefault("id", f"exp{i}")
        entry.update({k: v for k, v in overrides.items() if v is not None})
        if algos:
            entry["algorithms"] = algos
        merged = dict(entry.get("params") or {})
        merged.update({k: v for k, v in params.items() if v is not None})
        entry["params"] = merged
        try:
            specs.append(ExperimentSpec.from_mapping(entry))
        except (TypeError, ValueError) as exc:
            raise InputError(f"experiment {entry['id']}: {exc}") from exc
    return specs


def cmd_bench(args) -> int:
    specs = _bench_specs(args)
    rows, status = [], EXIT_OK
    for spec in specs:
        try:
            rows.extend(run_experiment(spec))
        except ExperimentError as exc:
            log.error("%s: %s", spec.id, exc)
            rows.extend(exc.rows)
            status = EXIT_ALGORITHM
    meta = {"timing": args.timing}
    for spec in specs:
        for key, value in spec_metadata(spec).items():
            meta[f"{spec.id}.{key}"] = value
    emit_csv(rows, args.out, meta, timing=args.timing)
    return status


COMMANDS = {"generate": cmd_generate, "detect": cmd_detect, "eval": cmd_eval, "bench": cmd_bench}
_INPUT_ERRORS = (InputError, OSError, ValueError, KeyError, yaml.YAMLError)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s: %(message)s")
    logging.captureWarnings(True)
    warnings.simplefilter("default")
    try:
        return COMMANDS[args.command](args)
    except AlgorithmFailure as exc:
        log.error("algorithm failed: %s", exc)
        return EXIT_ALGORITHM
    except _INPUT_ERRORS as exc:
        log.error("%s", exc if not isinstance(exc, KeyError) else f"missing parameter {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
