"""Command line front end.

Two subcommands:

* ``gea cluster`` ingests a numeric CSV (via categorization) or an
  allocation text file, clusters, and emits the dendrogram as JSON and/or
  Newick; optionally cuts it into flat clusters and scores them against a
  label column.
* ``gea entropy`` prints the generalized entropy of an allocation file.

Logs and warnings go to stderr; machine-readable output goes to stdout or
to ``--output``. Exit codes: 0 success, 1 input/usage error, 2 internal
invariant violation. The GEA_SEED environment variable is reserved but
unused: the pipeline is deterministic.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import fixedpoint as fp
from .agglomeration import cut, gea, score_accuracy, to_json, to_newick
from .allocation import FeatureAllocation, parse_allocation_text
from .categorize import CategorizationParams, NumericDataset, categorize, minmax_scale
from .entropy import generalized_entropy


class InputError(Exception):
    """Bad input file or bad option combination; maps to exit code 1."""


class _UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: str
    mode: str  # "numeric" | "allocation"
    d: int | None = None
    m: int | None = None
    gamma: float | None = None
    r: str | None = None  # decimal string; numeric mode defaults to "1.0"
    cut: int | None = None
    label_col: str | None = None
    format: str = "json"  # "json" | "newick" | "both"
    output: str | None = None
    scale: bool = False


def parse_csv(path, label_col: str | None = None) -> NumericDataset:
    """Read a UTF-8 CSV with a header row; every column except the optional
    label column must parse as a number."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [row for row in csv.reader(fh) if row]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    if not rows:
        raise InputError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise InputError(f"{path}: duplicate header names: {', '.join(dupes)}")
    label_idx = None
    if label_col is not None:
        if label_col not in header:
            raise InputError(f"{path}: no column named {label_col!r}")
        label_idx = header.index(label_col)
    dims = tuple(h for i, h in enumerate(header) if i != label_idx)
    if not dims:
        raise InputError(f"{path}: no numeric columns")
    values = []
    labels: list[str] | None = [] if label_idx is not None else None
    for rowno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(
                f"{path}: row {rowno}: expected {len(header)} cells, got {len(row)}"
            )
        vals = []
        for i, cell in enumerate(row):
            if i == label_idx:
                labels.append(cell.strip())
                continue
            try:
                v = float(cell)
            except ValueError:
                raise InputError(
                    f"{path}: row {rowno}, column {header[i]!r}: "
                    f"cannot parse {cell.strip()!r} as a number"
                ) from None
            if not math.isfinite(v):
                raise InputError(
                    f"{path}: row {rowno}, column {header[i]!r}: non-finite value"
                )
            vals.append(v)
        values.append(tuple(vals))
    if not values:
        raise InputError(f"{path}: no data rows")
    return NumericDataset(dims, tuple(values), tuple(labels) if labels else None)


def parse_allocation(path, r_override: str | None = None) -> FeatureAllocation:
    """Read an allocation text file. ``r_override`` (a decimal string)
    replaces the header's recurrence base, with a warning when they differ."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        g = parse_allocation_text(text)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None
    if r_override is not None:
        try:
            r_s = fp.from_decimal(r_override)
        except ValueError as exc:
            raise InputError(f"bad --r value: {exc}") from None
        if r_s <= 0:
            raise InputError("--r must be positive")
        if r_s != g.r_scaled:
            print(
                f"warning: --r {fp.format_decimal(r_s)} overrides header "
                f"r={fp.format_decimal(g.r_scaled)}",
                file=sys.stderr,
            )
            g = FeatureAllocation(g.n, g.blocks, r_s)
    return g


def run(config: RunConfig) -> int:
    """Execute the clustering pipeline for a validated-enough config."""
    try:
        _execute(config)
        return 0
    except (InputError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # invariant violations and everything unexpected
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


def _execute(config: RunConfig) -> None:
    t0 = time.perf_counter()
    labels = None
    if config.mode == "numeric":
        if config.d is None or config.m is None or config.gamma is None:
            raise InputError("--mode numeric requires --d, --m and --gamma")
        ds = parse_csv(config.input, config.label_col)
        labels = ds.labels
        if config.scale:
            ds = minmax_scale(ds)
        params = CategorizationParams(config.d, config.m, config.gamma, config.r or "1.0")
        g = categorize(ds, params)
    elif config.mode == "allocation":
        g = parse_allocation(config.input, config.r)
    else:
        raise InputError(f"unknown mode {config.mode!r}")
    if config.cut is not None and not 1 <= config.cut <= g.n:
        raise InputError(f"--cut must be in 1..{g.n}, got {config.cut}")

    dend = gea(g)
    _emit(dend, config)

    scored = None
    if config.cut is not None:
        clusters = cut(dend, config.cut)
        for lab in range(clusters.k):
            elems = " ".join(str(e + 1) for e in clusters.members(lab))
            print(f"cluster {lab}: {elems}")
        if labels is not None:
            correct, total = score_accuracy(clusters, labels)
            scored = (correct, total)
            print(f"correct={correct} total={total}")

    runtime = time.perf_counter() - t0
    summary = (
        f"n={g.n} blocks={len(g.blocks)} r={fp.format_decimal(g.r_scaled)} "
        f"runtime={runtime:.2f}s"
    )
    if scored:
        summary += f" accuracy={scored[0]}/{scored[1]}"
    print(summary, file=sys.stderr)


def _emit(dend, config: RunConfig) -> None:
    texts = {}
    if config.format in ("json", "both"):
        texts["json"] = to_json(dend)
    if config.format in ("newick", "both"):
        texts["nwk"] = to_newick(dend)
    if config.output is None:
        for text in texts.values():
            print(text)
        return
    if len(texts) == 1:
        Path(config.output).write_text(next(iter(texts.values())) + "\n", encoding="utf-8")
    else:
        for ext, text in texts.items():
            Path(f"{config.output}.{ext}").write_text(text + "\n", encoding="utf-8")


class _Parser(argparse.ArgumentParser):
    # usage problems are input errors (exit 1), not internal ones
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gea",
        description="Hierarchical clustering of weighted feature allocations "
        "by minimum projection entropy.",
        epilog="GEA_SEED is reserved but unused; runs are deterministic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cluster", help="cluster a CSV or allocation file")
    c.add_argument("--input", required=True, help="input file path")
    c.add_argument(
        "--mode",
        required=True,
        choices=["numeric", "allocation"],
        help="numeric: CSV through categorization; allocation: text format",
    )
    c.add_argument("--d", type=int, help="grid division parameter (numeric mode)")
    c.add_argument("--m", type=int, help="neighborhood overlap parameter (numeric mode)")
    c.add_argument("--gamma", type=float, help="flank weight power (numeric mode)")
    c.add_argument(
        "--r",
        help="recurrence base (decimal; numeric default 1.0, allocation "
        "default from the file header)",
    )
    c.add_argument("--cut", type=int, help="also emit k flat clusters")
    c.add_argument("--label-col", dest="label_col", help="CSV column with ground-truth labels")
    c.add_argument("--format", choices=["json", "newick", "both"], default="json")
    c.add_argument("--output", help="write dendrogram here instead of stdout")
    c.add_argument(
        "--scale", action="store_true", help="min-max scale each dimension first"
    )

    e = sub.add_parser("entropy", help="print the entropy of an allocation file")
    e.add_argument("--input", required=True, help="allocation text file")
    e.add_argument("--r", help="override the file's recurrence base (decimal)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "entropy":
        try:
            g = parse_allocation(args.input, args.r)
            print(generalized_entropy(g))
            return 0
        except (InputError, ValueError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except Exception as exc:
            print(f"internal error: {exc!r}", file=sys.stderr)
            return 2
    config = RunConfig(
        input=args.input,
        mode=args.mode,
        d=args.d,
        m=args.m,
        gamma=args.gamma,
        r=args.r,
        cut=args.cut,
        label_col=args.label_col,
        format=args.format,
        output=args.output,
        scale=args.scale,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
