"""Command-line interface.

Usage:
    twinsieve twins --limit 12 --format csv
    twinsieve classify 35
    twinsieve runs --limit 10000 --format json
    twinsieve verify --limit 100000 --scope twins,classify
    twinsieve bench --limit 10000000 --threads 1

Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 I/O failure.
Settings resolve as flags > TWINSIEVE_* environment variables > config file
(``--config PATH`` or ``TWINSIEVE_CONFIG``, key=value lines) > defaults.
"""
from __future__ import annotations

import contextlib
import csv
import json
import os
import resource
import sys
import time
from typing import Optional

import click

from . import __version__, kernels
from .classifier import classify
from .errors import TwinSieveError
from .runs import blocked_runs
from .sieve import DEFAULT_SEGMENT_SIZE, SieveConfig, enumerate_twins, summarize
from .verify import SCOPES, run_scope

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_IO = 3

ENV_PREFIX = "TWINSIEVE_"
CONFIG_KEYS = {"limit": int, "format": str, "segment_size": int, "threads": int}


class OutputError(Exception):
    """Writing an output document failed."""


def read_config_file(path: str) -> dict:
    settings = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise click.UsageError(f"cannot read config file {path}: {exc.strerror}")
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise click.UsageError(f"{path}:{lineno}: expected one of {sorted(CONFIG_KEYS)} as key=value")
        settings[key] = value.strip()
    return settings


def resolve(ctx: click.Context, name: str, flag_value, default):
    """Pick a setting by precedence: flag, environment, config file, default."""
    if flag_value is not None:
        return flag_value
    cast = CONFIG_KEYS[name]
    raw = os.environ.get(ENV_PREFIX + name.upper())
    source = f"${ENV_PREFIX}{name.upper()}"
    if raw is None:
        raw = (ctx.obj or {}).get("config", {}).get(name)
        source = f"config key {name}"
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise click.UsageError(f"{source}: invalid value {raw!r}")


def sieve_config(ctx, limit, segment_size, threads) -> SieveConfig:
    limit = resolve(ctx, "limit", limit, None)
    if limit is None:
        raise click.UsageError("--limit is required")
    segment_size = resolve(ctx, "segment_size", segment_size, DEFAULT_SEGMENT_SIZE)
    threads = resolve(ctx, "threads", threads, 0)
    try:
        return SieveConfig(limit, segment_size, threads)
    except TwinSieveError as exc:
        raise click.UsageError(str(exc))


def output_format(ctx, fmt, default):
    fmt = resolve(ctx, "format", fmt, default)
    if fmt not in ("csv", "json", "text"):
        raise click.UsageError(f"unknown format {fmt!r}; use csv or json")
    return fmt


@contextlib.contextmanager
def open_output(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
        sys.stdout.flush()
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}") from exc
    try:
        yield fh
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}") from exc
    finally:
        fh.close()


def write_record(out, command: str, parameters: dict, rows: list, **extra) -> None:
    doc = {"schema_version": SCHEMA_VERSION, "command": command, "parameters": parameters, "rows": rows}
    doc.update(extra)
    out.write(json.dumps(doc, indent=2) + "\n")


def csv_writer(out):
    return csv.writer(out, lineterminator="\n")


def note(ctx, message: str) -> None:
    if not ctx.obj.get("quiet"):
        click.echo(message, err=True)


def common_options(func):
    options = [
        click.option("--limit", type=int, default=None, help="Upper bound on the index n (numbers up to 6n+1)."),
        click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None),
        click.option("--output", "output", type=str, default=None, help="Write to PATH instead of stdout."),
        click.option("--segment-size", type=int, default=None, help="Indices per sieve segment."),
        click.option("--threads", type=int, default=None, help="Worker threads (0 = one per CPU)."),
        click.option("--quiet", is_flag=True, default=False, help="Suppress progress notes on stderr."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.version_option(__version__, prog_name="twinsieve")
@click.option("--config", "config_path", type=str, default=None,
              help="key=value settings file (also $TWINSIEVE_CONFIG).")
@click.pass_context
def cli(ctx, config_path):
    """Twin primes and 6n+/-1 primality via three quadratic forms."""
    ctx.ensure_object(dict)
    config_path = config_path or os.environ.get(ENV_PREFIX + "CONFIG")
    ctx.obj["config"] = read_config_file(config_path) if config_path else {}


def _quiet(ctx, quiet):
    ctx.obj["quiet"] = quiet or ctx.obj.get("quiet", False)


@cli.command()
@common_options
@click.pass_context
def twins(ctx, limit, fmt, output, segment_size, threads, quiet):
    """List twin pairs (6n-1, 6n+1) for n <= LIMIT."""
    _quiet(ctx, quiet)
    config = sieve_config(ctx, limit, segment_size, threads)
    fmt = output_format(ctx, fmt, "csv")
    params = {"limit": config.limit, "max_value": 6 * config.limit + 1}
    with open_output(output) as out:
        if fmt == "json":
            rows = [{"n": t.n, "p": t.p, "q": t.q} for t in enumerate_twins(config)]
            write_record(out, "twins", params, rows)
            count = len(rows)
        else:
            writer = csv_writer(out)
            writer.writerow(["n", "p", "q"])
            count = 0
            for t in enumerate_twins(config):
                writer.writerow([t.n, t.p, t.q])
                count += 1
    note(ctx, f"{count} twin pairs with n <= {config.limit} (numbers up to {6 * config.limit + 1})")
    return EXIT_OK


@cli.command(name="classify")
@click.argument("m", type=int)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None)
@click.option("--output", type=str, default=None)
@click.option("--quiet", is_flag=True, default=False)
@click.pass_context
def classify_cmd(ctx, m, fmt, output, quiet):
    """Decide whether M = 6n-1 or 6n+1 is prime, with a certificate if not."""
    _quiet(ctx, quiet)
    try:
        c = classify(m)
    except TwinSieveError as exc:
        raise click.UsageError(str(exc))
    fmt = output_format(ctx, fmt, "text")
    row = {
        "m": c.m,
        "verdict": c.verdict.value,
        "kind": c.witness.kind.name if c.witness else "",
        "x": c.witness.x if c.witness else "",
        "y": c.witness.y if c.witness else "",
        "n": c.witness.n if c.witness else (m + 1) // 6 if m % 6 == 5 else (m - 1) // 6,
        "d1": c.divisors.d1 if c.divisors else "",
        "d2": c.divisors.d2 if c.divisors else "",
    }
    with open_output(output) as out:
        if fmt == "json":
            write_record(out, "classify", {"m": m}, [{k: (None if v == "" else v) for k, v in row.items()}])
        elif fmt == "csv":
            writer = csv_writer(out)
            writer.writerow(list(row))
            writer.writerow(list(row.values()))
        else:
            out.write(f"{c.m}: {c.verdict.value}\n")
            if c.witness:
                out.write(f"witness: {c.witness} (n={c.witness.n})\n")
                out.write(f"divisors: {c.divisors.d1} x {c.divisors.d2}\n")
    return EXIT_OK


@cli.command()
@common_options
@click.option("--witnesses", is_flag=True, default=False, help="Include one witness per blocked index (JSON).")
@click.pass_context
def runs(ctx, limit, fmt, output, segment_size, threads, quiet, witnesses):
    """Maximal runs of consecutive blocked indices n <= LIMIT."""
    _quiet(ctx, quiet)
    config = sieve_config(ctx, limit, segment_size, threads)
    fmt = output_format(ctx, fmt, "csv")
    reports = blocked_runs(config.limit, witnesses=witnesses and fmt == "json",
                           segment_size=config.segment_size, threads=config.parallelism_hint)
    histogram: dict[int, int] = {}
    for r in reports:
        histogram[r.length] = histogram.get(r.length, 0) + 1
    histogram = dict(sorted(histogram.items()))
    longest = None
    for r in reports:
        if longest is None or r.length > longest.length:
            longest = r
    params = {"limit": config.limit, "max_value": 6 * config.limit + 1}
    with open_output(output) as out:
        if fmt == "json":
            rows = []
            for r in reports:
                row = {"start": r.start, "end": r.end, "length": r.length, "truncated": r.truncated}
                if witnesses:
                    row["witnesses"] = [{"n": w.n, "kind": w.kind.name, "x": w.x, "y": w.y} for w in r.witnesses]
                rows.append(row)
            summary = {
                "histogram": {str(k): v for k, v in histogram.items()},
                "longest": None if longest is None else {
                    "start": longest.start, "end": longest.end,
                    "length": longest.length, "truncated": longest.truncated,
                },
            }
            write_record(out, "runs", params, rows, summary=summary)
        else:
            writer = csv_writer(out)
            writer.writerow(["start", "end", "length", "truncated"])
            for r in reports:
                writer.writerow([r.start, r.end, r.length, int(r.truncated)])
    if longest is None:
        note(ctx, f"no blocked index in [1, {config.limit}]")
    else:
        hist = ", ".join(f"{k}:{v}" for k, v in histogram.items())
        note(ctx, f"longest run: length {longest.length} at start {longest.start}"
                  f"{' (truncated)' if longest.truncated else ''}; histogram {{{hist}}}")
    return EXIT_OK


def _parse_scopes(values) -> list[str]:
    scopes = []
    for value in values or SCOPES:
        for item in value.split(","):
            item = item.strip()
            if item not in SCOPES:
                raise click.UsageError(f"unknown scope {item!r}; choose from {', '.join(SCOPES)}")
            if item not in scopes:
                scopes.append(item)
    return scopes


@cli.command()
@common_options
@click.option("--scope", multiple=True, help=f"Comma-separated subset of {', '.join(SCOPES)} (default: all).")
@click.pass_context
def verify(ctx, limit, fmt, output, segment_size, threads, quiet, scope):
    """Check the form-based results against the classical oracle."""
    _quiet(ctx, quiet)
    config = sieve_config(ctx, limit, segment_size, threads)
    scopes = _parse_scopes(scope)
    fmt = output_format(ctx, fmt, "text")
    results = [run_scope(s, config) for s in scopes]
    with open_output(output) as out:
        if fmt == "json":
            rows = [{"scope": r.scope, "passed": r.passed, "checked": r.checked,
                     "mismatches": r.mismatches, "samples": r.samples, "detail": r.detail} for r in results]
            write_record(out, "verify", {"limit": config.limit, "max_value": 6 * config.limit + 1,
                                         "scopes": scopes}, rows)
        elif fmt == "csv":
            writer = csv_writer(out)
            writer.writerow(["scope", "passed", "checked", "mismatches", "detail"])
            for r in results:
                writer.writerow([r.scope, int(r.passed), r.checked, r.mismatches, r.detail])
        else:
            for r in results:
                out.write(f"{r.scope}: {'PASS' if r.passed else 'FAIL'} "
                          f"(checked {r.checked}, mismatches {r.mismatches}; {r.detail})\n")
                for sample in r.samples:
                    out.write(f"  mismatch: {sample}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_MISMATCH


@cli.command()
@common_options
@click.option("--backend", type=click.Choice(["auto", "numba", "numpy"]), default="auto",
              help="Marking kernel to time.")
@click.pass_context
def bench(ctx, limit, fmt, output, segment_size, threads, quiet, backend):
    """Time a full sieve run and print a determinism hash of its result."""
    _quiet(ctx, quiet)
    config = sieve_config(ctx, limit, segment_size, threads)
    if backend == "auto":
        backend = kernels.default_backend()
    if backend not in kernels.MARK_BACKENDS:
        raise click.UsageError(f"backend {backend!r} is not available here")
    config = SieveConfig(config.limit, config.segment_size, config.parallelism_hint, backend)
    # compile outside the timed region
    kernels.mark_segment(1, 2, backend)
    t0 = time.perf_counter()
    summary = summarize(config)
    elapsed = time.perf_counter() - t0
    in_flight = min(2 * config.threads, -(-config.limit // config.segment_size))
    row = {
        "limit": config.limit,
        "backend": backend,
        "segment_size": config.segment_size,
        "threads": config.threads,
        "twin_count": summary.count,
        "seconds": round(elapsed, 6),
        "indices_per_second": round(config.limit / elapsed) if elapsed > 0 else None,
        "bitmap_bytes_estimate": in_flight * kernels.segment_bytes(min(config.segment_size, config.limit)),
        "max_rss_bytes": resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024,
        "result_sha256": summary.digest,
    }
    with open_output(output) as out:
        if fmt == "json":
            write_record(out, "bench", {"limit": config.limit, "max_value": 6 * config.limit + 1}, [row])
        elif fmt == "csv":
            writer = csv_writer(out)
            writer.writerow(list(row))
            writer.writerow(list(row.values()))
        else:
            for k, v in row.items():
                out.write(f"{k}: {v}\n")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        rc = cli.main(args=argv, prog_name="twinsieve", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except OutputError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_IO
    except BrokenPipeError:
        return EXIT_IO
    except TwinSieveError as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    return rc if isinstance(rc, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
