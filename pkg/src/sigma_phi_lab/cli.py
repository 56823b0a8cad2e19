"""Command-line front end: ``sigma-phi-lab {scan,verify,cache}``.

Exit codes: 0 success, 1 usage or configuration error, 2 a mathematical
invariant failed or a cache file is corrupt.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from . import __version__
from .cache import cache_path, check_spf_cache, load_if_covers, write_spf_cache
from .counting import F_CHOICES, ScanConfig, run_scan
from .errors import CacheFormatError, InvariantViolation, SigmaPhiError
from .report import build_rows, to_csv, to_text
from .selfcheck import ORACLE_LIMIT_MAX, PROPERTY_CHECKS, oracle_suite
from .sieve import DEFAULT_SEGMENT_SIZE, build_spf_table

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2

DEFAULTS = {
    "x": "1e6",
    "y": "3",
    "c": "1",
    "delta": "auto",
    "sp": "3,5,7",
    "f": "const",
    "workers": "1",
    "segment_size": str(DEFAULT_SEGMENT_SIZE),
    "cache_dir": None,
    "out": "sigma_phi_out",
    "format": "text",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def parse_int(text: str, name: str) -> int:
    """Integer flag value; accepts scientific notation such as 1e6."""
    try:
        v = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name}: not a number: {text!r}") from None
    if v.denominator != 1:
        raise UsageError(f"--{name}: expected an integer, got {text!r}")
    return int(v)


def parse_real(text: str, name: str) -> float:
    try:
        return float(Fraction(str(text).strip()))
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name}: not a number: {text!r}") from None


def parse_rational(text: str, name: str) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--{name}: not a number or a/b fraction: {text!r}") from None


def read_config_file(path: str) -> dict[str, str]:
    """``key = value`` lines; '#' starts a comment; keys use flag spelling."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def resolve(args: argparse.Namespace) -> dict[str, str]:
    """flags > config file > defaults."""
    merged = dict(DEFAULTS)
    if getattr(args, "config", None):
        merged.update(read_config_file(args.config))
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v
    return merged


def build_config(opts: dict[str, str]) -> ScanConfig:
    sp = [parse_int(s, "sp") for s in str(opts["sp"]).split(",") if s.strip()]
    delta = None if str(opts["delta"]).strip().lower() == "auto" else parse_rational(opts["delta"], "delta")
    if opts["f"] not in F_CHOICES:
        raise UsageError(f"--f must be one of {', '.join(F_CHOICES)}")
    return ScanConfig(
        x=parse_int(opts["x"], "x"),
        y=parse_real(opts["y"], "y"),
        c=parse_rational(opts["c"], "c"),
        delta=delta,
        f_choice=opts["f"],
        p_list=tuple(sp),
        segment_size=parse_int(opts["segment_size"], "segment-size"),
        worker_count=parse_int(opts["workers"], "workers"),
    )


def _config_echo(cfg: ScanConfig) -> dict:
    return {
        "x": cfg.x,
        "y": cfg.y,
        "c": str(cfg.c_fraction),
        "delta": str(cfg.delta_fraction),
        "f": cfg.f_choice,
        "sp": list(cfg.p_list),
        "segment_size": cfg.segment_size,
        "workers": cfg.worker_count,
    }


def cmd_scan(args) -> int:
    opts = resolve(args)
    if opts["format"] not in ("csv", "text"):
        raise UsageError("--format must be csv or text")
    cfg = build_config(opts)
    cfg.require_side_condition()
    started = datetime.now(timezone.utc).isoformat()
    t0 = time.perf_counter()

    need = math.isqrt(2 * cfg.x + 2) + 1
    table = load_if_covers(opts["cache_dir"], need)
    cache_hits = 0 if table is None else 1
    base = None if table is None else table.primes(need)
    report = run_scan(cfg, base_primes=base)

    rows = build_rows(report)
    csv_text = to_csv(rows)
    text = to_text(report)
    out = Path(opts["out"])
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "report.csv", out / "summary.txt", out / "manifest.json"]
    paths[0].write_text(csv_text)
    paths[1].write_text(text)
    manifest = {
        "config": _config_echo(cfg),
        "resolved_flags": opts,
        "tool_version": __version__,
        "start": started,
        "end": datetime.now(timezone.utc).isoformat(),
        "elapsed_seconds": time.perf_counter() - t0,
        "cache_hits": cache_hits,
        "output_paths": [str(p) for p in paths],
    }
    paths[2].write_text(json.dumps(manifest, indent=2) + "\n")
    sys.stdout.write(csv_text if opts["format"] == "csv" else text)

    failures = report.invariant_failures()
    failures += [f"Mertens inequality fails at y={cfg.y}" for r in rows if r["kind"] == "mertens" and r["violations"]]
    for msg in failures:
        print(f"INVARIANT VIOLATION: {msg}", file=sys.stderr)
    return EXIT_VIOLATION if failures else EXIT_OK


def cmd_verify(args) -> int:
    limit = parse_int(args.oracle_limit, "oracle-limit")
    if not 1 <= limit <= ORACLE_LIMIT_MAX:
        raise UsageError(f"--oracle-limit must be in [1, {ORACLE_LIMIT_MAX}], got {limit}")
    names = [s.strip() for s in args.props.split(",") if s.strip()] if args.props else list(PROPERTY_CHECKS)
    unknown = [s for s in names if s not in PROPERTY_CHECKS]
    if unknown:
        raise UsageError(f"unknown --props {unknown}; choose from {', '.join(PROPERTY_CHECKS)}")
    suites = [("oracle", oracle_suite)] if not args.props else []
    suites += [(name, PROPERTY_CHECKS[name]) for name in names]
    for name, check in suites:
        problem = check(limit)
        if problem:
            print(f"FAIL {name}: {problem}")
            return EXIT_VIOLATION
        print(f"ok   {name} (limit {limit})")
    return EXIT_OK


def cmd_cache(args) -> int:
    path = cache_path(args.cache_dir)
    if args.action == "build":
        limit = parse_int(args.limit, "limit")
        write_spf_cache(path, build_spf_table(limit))
        print(f"wrote {path} (limit {limit})")
        return EXIT_OK
    if not path.exists():
        print(f"no cache file at {path}", file=sys.stderr)
        return EXIT_USAGE
    try:
        offset = check_spf_cache(path, fraction=parse_real(args.sample, "sample"))
    except CacheFormatError as exc:
        print(f"corrupt cache: {exc} (offset {exc.offset})", file=sys.stderr)
        return EXIT_VIOLATION
    if offset is not None:
        print(f"corrupt cache: first mismatching entry at byte offset {offset}", file=sys.stderr)
        return EXIT_VIOLATION
    print(f"{path}: sample ok")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sigma-phi-lab", description="Scans and checks for phi(sigma(n)).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def shared(p):
        p.add_argument("--config", help="file of key=value defaults (flags win)")
        p.add_argument("--x", help="scan limit, e.g. 1e6")
        p.add_argument("--y", help="primorial parameter: all primes <= y must divide sigma(n)")
        p.add_argument("--c", help="threshold constant, decimal or a/b")
        p.add_argument("--delta", help="sigma(n) >= delta n cut, decimal, a/b or 'auto' (= c ln y)")
        p.add_argument("--sp", help="comma-separated primes p for S_p(x)")
        p.add_argument("--f", help=f"threshold function: {', '.join(F_CHOICES)}")
        p.add_argument("--workers")
        p.add_argument("--segment-size", dest="segment_size")
        p.add_argument("--cache-dir", dest="cache_dir", help="defaults to $SIGMA_PHI_CACHE_DIR")
        p.add_argument("--out", help="output directory")
        p.add_argument("--format", help="what to print on stdout: csv or text")

    scan = sub.add_parser("scan", help="run a full scan and write CSV, summary and manifest")
    shared(scan)
    scan.set_defaults(func=cmd_scan)

    verify = sub.add_parser("verify", help="brute-force oracle and property suites")
    shared(verify)
    verify.add_argument("--oracle-limit", default="1e4")
    verify.add_argument("--props", help=f"subset of: {', '.join(PROPERTY_CHECKS)}")
    verify.set_defaults(func=cmd_verify)

    cache = sub.add_parser("cache", help="build or check the SPF cache file")
    cache.add_argument("action", choices=("build", "check"))
    cache.add_argument("--limit", default="1e7")
    cache.add_argument("--sample", default="0.01", help="fraction of entries to recheck")
    cache.add_argument("--cache-dir", dest="cache_dir")
    cache.set_defaults(func=cmd_cache)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"sigma-phi-lab: invariant violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (UsageError, SigmaPhiError, OSError) as exc:
        print(f"sigma-phi-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
