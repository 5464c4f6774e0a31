"""Command-line entry point.

    majorant-lab --experiment NAME [--config PATH] [--out PATH]
                 [--threads N] [--tolerance-scale X]

Exit status: 0 when the experiment's check passes, 1 when it fails,
2 for usage or configuration errors.  ``MAJORANT_LAB_THREADS`` overrides
``--threads``.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import experiments
from .serialize import ConfigError, read_kv, write_csv

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
THREADS_ENV = "MAJORANT_LAB_THREADS"

log = logging.getLogger("majorant_lab")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="majorant-lab", description="Run a named majorant experiment.")
    p.add_argument("--experiment", help="experiment name (see --list)")
    p.add_argument("--config", help="key=value file with experiment settings")
    p.add_argument("--out", default="-", help="CSV destination, '-' for stdout")
    p.add_argument("--threads", type=int, default=1, help="worker threads for grid sweeps")
    p.add_argument("--tolerance-scale", type=float, default=1.0, help="multiply every tolerance by X")
    p.add_argument("--list", action="store_true", help="print the registered experiments and exit")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _threads(arg: int) -> int:
    env = os.environ.get(THREADS_ENV)
    if env is None or env.strip() == "":
        n = arg
    else:
        try:
            n = int(env)
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV}={env!r} is not an integer") from exc
    if n < 1:
        raise ConfigError("thread count must be at least 1")
    return n


def run_experiment(name: str, config=None, *, out="-", threads: int = 1, tolerance_scale: float = 1.0) -> int:
    """Run one experiment, write its CSV and return the exit status."""
    try:
        values = {} if config is None else (dict(config) if isinstance(config, dict) else read_kv(config))
        if not tolerance_scale > 0:
            raise ConfigError("tolerance scale must be positive")
        cfg = experiments.Config(values, tolerance_scale=tolerance_scale, threads=_threads(threads))
        result = experiments.run(name, cfg)
    except (ConfigError, ValueError) as exc:
        print(f"majorant-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        # numerical failure: the claim could not be confirmed
        print(f"majorant-lab: check aborted: {exc}", file=sys.stderr)
        return EXIT_FAIL
    target = sys.stdout if out in (None, "-") else out
    try:
        write_csv(target, result.header, result.rows, result.verdict)
    except OSError as exc:
        print(f"majorant-lab: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.info("%s: %s (%s)", name, "PASS" if result.passed else "FAIL", result.witness)
    return EXIT_PASS if result.passed else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.list:
        print("\n".join(experiments.names()))
        return EXIT_PASS
    if not args.experiment:
        parser.print_usage(sys.stderr)
        print("majorant-lab: error: --experiment is required", file=sys.stderr)
        return EXIT_USAGE
    return run_experiment(
        args.experiment,
        args.config,
        out=args.out,
        threads=args.threads,
        tolerance_scale=args.tolerance_scale,
    )


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
