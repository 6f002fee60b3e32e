"""Command line benchmark driver.

Usage: bench <experiment> [flags]

Settings resolve in three layers: built-in defaults, then a config file
(``--config``, ``key = value`` lines with ``#`` comments), then explicit
command line flags. Exit codes: 0 success, 1 configuration error,
2 theory-check violation, 3 non-convergence.
"""

import argparse
import sys

from .experiments import (EXPERIMENTS, RUNNERS, ConfigError,
                          ExperimentConfig)

_INT_FIELDS = ("seed", "max_iter", "runs")
_FLOAT_FIELDS = ("tau", "radius", "s", "eta", "theta", "tol")
_INT_LIST_FIELDS = ("dimensions",)
_FLOAT_LIST_FIELDS = ("mu",)
_STR_FIELDS = ("experiment", "stepsize", "output")
_ALL_FIELDS = (_INT_FIELDS + _FLOAT_FIELDS + _INT_LIST_FIELDS
               + _FLOAT_LIST_FIELDS + _STR_FIELDS)


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad usage as a ConfigError instead of
    exiting with argparse's own status code."""

    def error(self, message):
        raise ConfigError(message)


def _coerce(key: str, value: str):
    try:
        if key in _INT_FIELDS:
            return int(value)
        if key in _FLOAT_FIELDS:
            return float(value)
        if key in _INT_LIST_FIELDS:
            return tuple(int(tok) for tok in value.replace(",", " ").split())
        if key in _FLOAT_LIST_FIELDS:
            return tuple(float(tok)
                         for tok in value.replace(",", " ").split())
    except ValueError as exc:
        raise ConfigError("invalid value for %s: %r" % (key, value)) from exc
    return value


def parse_config_file(path: str) -> dict:
    """Read ``key = value`` settings; '#' starts a comment, blank lines
    are skipped, and dashes in keys are treated as underscores."""
    out = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("%s line %d: expected key=value, got %r"
                                  % (path, lineno, raw.strip()))
            key, value = line.split("=", 1)
            key = key.strip().replace("-", "_")
            if key not in _ALL_FIELDS:
                raise ConfigError("%s line %d: unknown setting %r"
                                  % (path, lineno, key))
            out[key] = _coerce(key, value.strip())
    return out


def build_parser() -> _Parser:
    parser = _Parser(prog="bench",
                     description="Run a benchmark experiment and write "
                                 "CSV results.")
    parser.add_argument("experiment",
                        help="one of: " + ", ".join(EXPERIMENTS))
    parser.add_argument("--dimension", dest="dimensions", nargs="+",
                        type=int, default=None, metavar="N",
                        help="manifold sizes to run (one instance each)")
    parser.add_argument("--seed", type=int, default=None,
                        help="master seed for instance generation")
    parser.add_argument("--mu", nargs="+", type=float, default=None,
                        metavar="MU", help="l1 weights (sparse-mean)")
    parser.add_argument("--tau", type=float, default=None,
                        help="distance-term weight (spd-convex)")
    parser.add_argument("--radius", type=float, default=None,
                        help="ball radius (constrained-mean)")
    parser.add_argument("--stepsize", default=None,
                        help="constant, backtracking, or both")
    parser.add_argument("--s", type=float, default=None,
                        help="backtracking initial stepsize")
    parser.add_argument("--eta", type=float, default=None,
                        help="backtracking contraction factor in (0,1)")
    parser.add_argument("--theta", type=float, default=None,
                        help="backtracking growth factor >= 1")
    parser.add_argument("--max-iter", dest="max_iter", type=int,
                        default=None, help="iteration cap per solve")
    parser.add_argument("--tol", type=float, default=None,
                        help="gradient-mapping stopping tolerance")
    parser.add_argument("--runs", type=int, default=None,
                        help="independent repetitions (sparse-mean)")
    parser.add_argument("--config", dest="config_file", default=None,
                        metavar="FILE", help="key=value settings file")
    parser.add_argument("--output", default=None, metavar="DIR",
                        help="directory for CSV output (default: results)")
    return parser


def resolve_config(argv=None) -> ExperimentConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    merged = {}
    if ns.config_file is not None:
        merged.update(parse_config_file(ns.config_file))
    for key in _ALL_FIELDS:
        value = getattr(ns, key, None)
        if value is not None:
            merged[key] = tuple(value) if isinstance(value, list) else value
    merged["experiment"] = ns.experiment
    return ExperimentConfig(**merged)


def main(argv=None) -> int:
    try:
        config = resolve_config(argv)
    except (ConfigError, OSError) as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 1

    runner = RUNNERS[config.experiment]
    try:
        result = runner(config)
    except ValueError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 1
    except RuntimeError as exc:
        print("did not converge: %s" % exc, file=sys.stderr)
        return 3

    for path in result.csv_paths:
        print("wrote %s" % path)
    if result.violations:
        print("%d theory-check violation(s)" % result.violations,
              file=sys.stderr)
        return 2
    if not result.all_converged:
        print("at least one solve did not converge", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
