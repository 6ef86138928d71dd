"""Command-line interface.

Subcommands: generate, npn, estimate, select, export-dot, benchmark,
pipeline.  Exit codes: 0 success, 2 input error, 3 config/parameter
error, 4 numeric error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .datagen import (GraphStructureSpec, build_covariance_model,
                      generate_structure, sample_dataset)
from .errors import (ConfigError, InputError, NumericError, ParameterError,
                     SparseGMError)
from .io import (export_dot, read_dataset_csv, read_graph_edgelist,
                 write_dataset_csv, write_graph_edgelist)
from .nonparanormal import npn_truncation
from .pipeline import (BenchmarkScenario, PipelineConfig, benchmark,
                       benchmark_csv, run_pipeline)

EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4


def _add_generator_args(p: argparse.ArgumentParser, required: bool = True):
    p.add_argument("--structure", required=required,
                   choices=["hub", "cluster", "band", "scale-free", "random"])
    p.add_argument("--d", type=int, required=required)
    p.add_argument("--g", type=int, default=None)
    p.add_argument("--bandwidth", type=int, default=1)
    p.add_argument("--edge-prob", type=float, default=None)
    p.add_argument("--intra-prob", type=float, default=0.3)
    p.add_argument("--v", type=float, default=0.3)
    p.add_argument("--u", type=float, default=0.1)


def _add_pipeline_args(p: argparse.ArgumentParser, with_selector: bool):
    p.add_argument("--input", help="input CSV path")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--transform", choices=["none", "npn-truncation"],
                   default="none")
    p.add_argument("--estimator", choices=["mb", "glasso", "correlation"],
                   default="mb")
    p.add_argument("--screening", choices=["none", "lossless", "lossy"],
                   default="none")
    p.add_argument("--k", type=int, default=None,
                   help="lossy neighborhood size (default min(n-1, d-1))")
    p.add_argument("--nlambda", type=int, default=10)
    p.add_argument("--lambda-min-ratio", type=float, default=0.1)
    p.add_argument("--sym", choices=["or", "and"], default="or")
    if with_selector:
        p.add_argument("--selector", choices=["none", "stars", "ric", "ebic"],
                       default="none")
        p.add_argument("--stars-reps", type=int, default=20)
        p.add_argument("--stars-subsample", type=int, default=None)
        p.add_argument("--stars-beta", type=float, default=0.1)
        p.add_argument("--ric-reps", type=int, default=20)
        p.add_argument("--ebic-gamma", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")


def _pipeline_config(args, selector: str) -> PipelineConfig:
    generate = None
    if getattr(args, "structure", None) is not None and args.input is None:
        generate = {
            "structure": args.structure, "d": args.d, "n": args.n,
            "g": args.g, "bandwidth": args.bandwidth,
            "edge_prob": args.edge_prob, "intra_prob": args.intra_prob,
            "v": args.v, "u": args.u,
        }
        generate = {k: v for k, v in generate.items() if v is not None}
    return PipelineConfig(
        output_dir=args.out,
        input_csv=args.input,
        has_header=not args.no_header,
        generate=generate,
        transform=args.transform,
        estimator=args.estimator,
        screening=args.screening,
        k=args.k,
        nlambda=args.nlambda,
        lambda_min_ratio=args.lambda_min_ratio,
        sym=args.sym,
        selector=selector,
        stars_reps=getattr(args, "stars_reps", 20),
        stars_subsample=getattr(args, "stars_subsample", None),
        stars_beta=getattr(args, "stars_beta", 0.1),
        ric_reps=getattr(args, "ric_reps", 20),
        ebic_gamma=getattr(args, "ebic_gamma", 0.5),
        seed=args.seed,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsegm",
        description="High-dimensional sparse undirected graph estimation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="simulate a graph model and dataset")
    _add_generator_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("npn", help="nonparanormal truncation transform")
    p.add_argument("--input", required=True)
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--output", required=True)

    p = sub.add_parser("estimate", help="estimate a regularization path")
    _add_generator_args(p, required=False)
    p.add_argument("--n", type=int, default=None, help="sample count (generator)")
    _add_pipeline_args(p, with_selector=False)

    p = sub.add_parser("select", help="estimate a path and select lambda")
    _add_generator_args(p, required=False)
    p.add_argument("--n", type=int, default=None, help="sample count (generator)")
    _add_pipeline_args(p, with_selector=True)

    p = sub.add_parser("export-dot", help="convert an edge list to DOT")
    p.add_argument("--edges", required=True, help="edge-list file")
    p.add_argument("--labels", default=None,
                   help="comma-separated node labels (default V1..Vd)")
    p.add_argument("--output", default=None, help="DOT file (default stdout)")

    p = sub.add_parser("benchmark", help="time estimators on noise data")
    p.add_argument("--scenario", action="append", required=True,
                   metavar="d,n,method,screening",
                   help="e.g. 1000,100,mb,lossy (repeatable)")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--nlambda", type=int, default=10)
    p.add_argument("--lambda-min-ratio", type=float, default=0.4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="CSV file (default stdout)")

    p = sub.add_parser("pipeline", help="full estimation pipeline")
    _add_generator_args(p, required=False)
    p.add_argument("--n", type=int, default=None, help="sample count (generator)")
    _add_pipeline_args(p, with_selector=True)

    return parser


def _cmd_generate(args) -> int:
    spec = GraphStructureSpec(
        structure=args.structure, d=args.d, g=args.g,
        bandwidth=args.bandwidth, edge_prob=args.edge_prob,
        intra_prob=args.intra_prob,
    )
    truth = generate_structure(spec, seed=args.seed)
    model = build_covariance_model(truth, v=args.v, u=args.u)
    ds = sample_dataset(model, args.n, seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_dataset_csv(ds.data, out / "data.csv")
    write_graph_edgelist(truth, out / "truth.edges")
    print(f"wrote {out / 'data.csv'} and {out / 'truth.edges'}")
    return 0


def _cmd_npn(args) -> int:
    x = read_dataset_csv(args.input, has_header=not args.no_header)
    write_dataset_csv(npn_truncation(x), args.output)
    print(f"wrote {args.output}")
    return 0


def _cmd_export_dot(args) -> int:
    graph = read_graph_edgelist(args.edges)
    labels = (args.labels.split(",") if args.labels
              else [f"V{i + 1}" for i in range(graph.d)])
    text = export_dot(graph, labels)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_benchmark(args) -> int:
    scenarios = []
    for spec in args.scenario:
        parts = spec.split(",")
        if len(parts) != 4:
            raise ConfigError(
                f"scenario must be d,n,method,screening: {spec!r}"
            )
        scenarios.append(BenchmarkScenario(
            d=int(parts[0]), n=int(parts[1]), method=parts[2],
            screening=parts[3],
        ))
    rows = benchmark(scenarios, seed=args.seed, reps=args.reps,
                     nlambda=args.nlambda,
                     lambda_min_ratio=args.lambda_min_ratio)
    text = benchmark_csv(rows)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_pipeline(args, selector: str | None = None) -> int:
    if args.input is None:
        missing = [flag for flag, val in (
            ("--structure", getattr(args, "structure", None)),
            ("--d", getattr(args, "d", None)),
            ("--n", getattr(args, "n", None)),
        ) if val is None]
        if missing:
            raise ConfigError(
                "either --input or generator flags are needed "
                f"(missing {', '.join(missing)})"
            )
    config = _pipeline_config(
        args, selector if selector is not None else getattr(args, "selector", "none")
    )
    summary = run_pipeline(config)
    print(f"wrote artifacts to {config.output_dir} "
          f"({len(summary['lambdas'])} path points)")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": _cmd_generate,
        "npn": _cmd_npn,
        "estimate": lambda a: _cmd_pipeline(a, selector="none"),
        "select": _cmd_pipeline,
        "export-dot": _cmd_export_dot,
        "benchmark": _cmd_benchmark,
        "pipeline": _cmd_pipeline,
    }
    try:
        return handlers[args.command](args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except SparseGMError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
