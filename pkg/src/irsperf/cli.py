"""Command-line front end: ``irsperf sweep|reproduce|diversity``.

stdout carries CSV only (when ``--out -``); diagnostics go to stderr.
Exit status: 0 success, 1 numerical failure, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from .figures import DEFAULT_SEED, FIGURES, reproduce
from .special_fn import DomainError, QuadratureError
from .sweep import ConfigError, McConfig, SweepSpec, load_config, run_diversity, run_sweep

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, help="master seed for Monte Carlo columns")
    common.add_argument("--samples", type=_positive_int, help="Monte Carlo sample count")
    common.add_argument("--quad-nodes", type=_positive_int, help="Gauss-Legendre nodes for the SER integral")

    parser = argparse.ArgumentParser(prog="irsperf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", parents=[common], help="run a sweep described by a config file")
    p.add_argument("config")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout (default)")

    p = sub.add_parser("diversity", parents=[common], help="log-log slopes of outage curves")
    p.add_argument("config")
    p.add_argument("--out", default="-", help="output CSV path, '-' for stdout (default)")

    p = sub.add_parser("reproduce", parents=[common], help="regenerate a figure's CSV files")
    p.add_argument("figure", choices=FIGURES)
    p.add_argument("--out", default="figures",
                   help="output directory (default: figures); '-' writes every family to stdout")
    return parser


def _apply_overrides(spec: SweepSpec, args) -> SweepSpec:
    if args.seed is not None or args.samples is not None:
        base = spec.mc or McConfig()
        spec = replace(spec, mc=McConfig(args.samples or base.n_samples,
                                         base.seed if args.seed is None else args.seed))
    if args.quad_nodes is not None:
        spec = replace(spec, quad_nodes=args.quad_nodes)
    return spec


def _write(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    print(f"wrote {out}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("sweep", "diversity"):
            spec = _apply_overrides(load_config(args.config), args)
            text = run_sweep(spec) if args.command == "sweep" else run_diversity(spec)
            _write(text, args.out)
        else:
            docs = reproduce(args.figure, args.samples,
                             DEFAULT_SEED if args.seed is None else args.seed,
                             args.quad_nodes or 64)
            if args.out == "-":
                _write("\n".join(docs.values()), "-")
            else:
                os.makedirs(args.out, exist_ok=True)
                for name, text in docs.items():
                    _write(text, os.path.join(args.out, f"{name}.csv"))
    except ConfigError as exc:
        print(f"irsperf: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"irsperf: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (QuadratureError, DomainError, ArithmeticError) as exc:
        print(f"irsperf: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
