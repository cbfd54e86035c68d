"""Command-line entry point: ``schattencs {verify,replay,sample,norm}``.

``verify`` runs a sweep described by an optional key/value config file;
command-line flags override file values. Exit status is 0 iff every trial
passed (``verify``) or every record replayed bit-identically (``replay``).
"""

import argparse
import configparser
import json
import sys

from .errors import ConfigInvalid, IoFailure, SchattenError
from .harness import (
    CHECKER_IDS,
    RunConfig,
    SamplerSettings,
    encode,
    instance_digest,
    replay,
    run,
    sample_instance,
)
from .matio import read_matrix
from .matrixcore import schatten_norm

__all__ = ["main", "build_parser", "load_config"]

_SECTION = "run"


def load_config(path):
    """Read ``key = value`` lines (an optional ``[run]`` header is allowed)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IoFailure(f"cannot read config {path}: {exc}") from exc
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        if not text.lstrip().startswith("["):
            text = f"[{_SECTION}]\n" + text
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigInvalid(f"{path}: {exc}") from exc
    sections = parser.sections()
    if sections != [_SECTION]:
        raise ConfigInvalid(f"{path}: expected only a [{_SECTION}] section, got {sections}")
    return {k.replace("-", "_"): v for k, v in parser[_SECTION].items()}


def _add_run_flags(p):
    p.add_argument("--checker", help="checker ids or groups, comma separated, or 'all'")
    p.add_argument("--trials", help="trials per checker")
    p.add_argument("--dim", help="dimension or lo:hi range")
    p.add_argument("--len", help="family length or lo:hi range")
    p.add_argument("--seed", help="base seed (64-bit)")
    p.add_argument("--s", help="pin the Schatten index")
    p.add_argument("--q", help="pin q")
    p.add_argument("--r", help="pin r")
    p.add_argument("--tol-rel", dest="tol_rel", help="relative tolerance")
    p.add_argument("--tol-abs", dest="tol_abs", help="absolute tolerance")
    p.add_argument("--grid", help="shift grid, comma separated")
    p.add_argument("--out", help="JSON-lines record file")
    p.add_argument("--jobs", help="worker processes")


def build_parser():
    parser = argparse.ArgumentParser(prog="schattencs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a seeded sweep of checkers")
    p.add_argument("--config", help="key/value config file")
    _add_run_flags(p)
    p.add_argument("--quiet", action="store_true", help="skip the summary table")

    p = sub.add_parser("replay", help="re-run records from a JSON-lines file")
    p.add_argument("records")
    p.add_argument("--line", type=int, help="replay only this (1-based) line")
    p.add_argument(
        "--resample",
        action="store_true",
        help="re-sample from the seed even if an instance is dumped",
    )

    p = sub.add_parser("sample", help="print one sampled instance as JSON")
    p.add_argument("--checker", required=True, choices=CHECKER_IDS, metavar="ID")
    p.add_argument("--seed", type=int, default=0, help="trial seed")
    p.add_argument("--dim", default="2:6")
    p.add_argument("--len", default="1:8")
    p.add_argument("--s")
    p.add_argument("--q")
    p.add_argument("--r")

    p = sub.add_parser("norm", help="Schatten norm of a matrix file")
    p.add_argument("path")
    p.add_argument("--s", default="inf", help="Schatten index (default inf)")
    return parser


def _cmd_verify(args):
    values = load_config(args.config) if args.config else {}
    for key in RunConfig.KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    config = RunConfig.from_mapping(values)
    summary = run(config)
    if not args.quiet:
        print(summary.table())
    return 0 if summary.ok else 1


def _read_records(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]
    except OSError as exc:
        raise IoFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path}: {exc}") from exc


def _cmd_replay(args):
    records = _read_records(args.records)
    if args.line is not None:
        if not 1 <= args.line <= len(records):
            raise ConfigInvalid(f"line {args.line} out of range 1..{len(records)}")
        records = [records[args.line - 1]]
    status = 0
    for rec in records:
        fresh = replay(rec, use_instance=not args.resample)
        same = fresh["lhs"] == rec["lhs"] and fresh["rhs"] == rec["rhs"]
        verdict = "PASS" if fresh["pass"] else "FAIL"
        print(
            f"{rec['checker_id']} seed={rec['seed']} lhs={fresh['lhs']!r} rhs={fresh['rhs']!r} "
            f"{verdict} {'identical' if same else 'MISMATCH'}"
        )
        status |= 0 if same else 1
    return status


def _cmd_sample(args):
    settings = SamplerSettings(args.dim, args.len, args.s, args.q, args.r)
    inst = sample_instance(args.checker, args.seed, settings)
    out = {
        "checker_id": args.checker,
        "seed": args.seed,
        "digest": instance_digest(inst),
        "instance": encode(inst),
    }
    print(json.dumps(out))
    return 0


def _cmd_norm(args):
    M = read_matrix(args.path)
    print(repr(schatten_norm(M, float(args.s))))
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {
        "verify": _cmd_verify,
        "replay": _cmd_replay,
        "sample": _cmd_sample,
        "norm": _cmd_norm,
    }[args.command]
    try:
        return handler(args)
    except SchattenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
