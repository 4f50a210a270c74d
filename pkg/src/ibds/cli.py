"""Command-line driver: sweep the pipeline, write CSV, optionally render
figures and print a summary table.

Flags override config-file values. With --graph the topology stage is skipped
and the sweep runs directly on a contention-graph file.
"""

import argparse
import sys
from dataclasses import replace

from .experiment import (
    ExperimentConfig,
    VerificationFailure,
    emit_csv,
    format_summary,
    load_config,
    run_sweep,
    sweep_graph,
)
from .graph import load_graph

__all__ = ["build_parser", "main"]


def _int_list(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok.strip()) for tok in value.split(",") if tok.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")


def _variant_list(value: str) -> tuple[str, ...]:
    return tuple(tok.strip() for tok in value.split(",") if tok.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ibds",
        description=(
            "Run distributed bounded-degree subgraph selection over randomly "
            "generated networks (or a given contention-graph file) and write "
            "aggregated results as CSV."
        ),
    )
    p.add_argument("--config", metavar="PATH", help="key = value config file")
    p.add_argument("--nodes", type=_int_list, metavar="N1,N2,...", help="network sizes to sweep")
    p.add_argument("--q", type=int, help="streams per link (antenna elements per node)")
    p.add_argument("--k", type=_int_list, metavar="K1,K2,...", help="degree bounds to sweep")
    p.add_argument("--g", type=_int_list, metavar="G1,G2,...", help="family caps for variant rg")
    p.add_argument(
        "--variant",
        type=_variant_list,
        metavar="V1,V2,...",
        help="selection variants: plain, r, rg",
    )
    p.add_argument("--trials", type=int, help="networks per data point (default 25)")
    p.add_argument("--seed", type=int, help="base seed for the trial schedule")
    p.add_argument("--tx-radius", type=float, help="transmission radius override")
    p.add_argument("--interference-radius", type=float, help="interference radius override")
    p.add_argument("--out", metavar="CSV", help="output CSV path")
    p.add_argument(
        "--verify",
        choices=("strict", "off"),
        help="check every run against the independent verifiers (default strict)",
    )
    p.add_argument(
        "--graph",
        metavar="FILE",
        help="skip topology generation and run on a contention-graph file",
    )
    p.add_argument("--figures", metavar="DIR", help="also render figures into this directory")
    p.add_argument("--summary", action="store_true", help="print a plain-text summary table")
    return p


def _resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {}
    if args.nodes is not None:
        overrides["node_counts"] = args.nodes
    if args.q is not None:
        overrides["q"] = args.q
    if args.k is not None:
        overrides["k_range"] = args.k
    if args.g is not None:
        overrides["g_range"] = args.g
    if args.variant is not None:
        overrides["variants"] = args.variant
    if args.trials is not None:
        overrides["trials"] = args.trials
    if args.seed is not None:
        overrides["base_seed"] = args.seed
    if args.tx_radius is not None:
        overrides["tx_radius"] = args.tx_radius
    if args.interference_radius is not None:
        overrides["interference_radius"] = args.interference_radius
    if args.out is not None:
        overrides["output_path"] = args.out
    if args.verify is not None:
        overrides["verify"] = args.verify == "strict"
    if args.figures is not None:
        overrides["figures_dir"] = args.figures
    return replace(cfg, **overrides) if overrides else cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        if args.graph:
            rows = sweep_graph(load_graph(args.graph), cfg)
        else:
            rows = run_sweep(cfg)
        emit_csv(rows, cfg.output_path)
        print(f"wrote {len(rows)} rows to {cfg.output_path}")
        if cfg.figures_dir:
            from .plots import render_figures

            for path in render_figures(rows, cfg.figures_dir):
                print(f"wrote {path}")
        if args.summary:
            print(format_summary(rows))
        return 0
    except (ValueError, VerificationFailure, OSError) as exc:
        # ConfigError and GraphFormatError are ValueErrors too
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
