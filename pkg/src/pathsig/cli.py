"""Command-line front end.

Subcommands:

    sig           signatures / log-signatures of CSV streams
    features      standardized signature feature matrices (CSV or JSON)
    embed         raw embedded paths (CSV), for downstream tooling
    classify-demo the two-class ARMA stream classification experiment
    cde-demo      truncation-depth error table for linear CDE solving

Exit codes: 0 on success, 2 on input/parse errors (message carries the CSV
line number), 3 on configuration errors.  All output uses 17 significant
digits so that parsing the numbers back reproduces the in-memory doubles
exactly.  Missing observations are empty cells and are only accepted with
--embedding missing; encode scalar streams with missing entries one stream
per row (--layout rows), since blank lines are skipped as separators.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Sequence

import numpy as np

from .cde import LinearVectorField, exact_linear_cde_endpoint, linear_cde_solve_signature
from .embeddings import cumsum_basepoint
from .features import EMBEDDINGS, build_feature_matrix
from .lyndon import log_signature_coords, lyndon_words
from .models import run_arma_experiment
from .signature import signature
from .tensor import word_label, words

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3


class InputError(Exception):
    """Unreadable or malformed input data (exit code 2)."""


class ConfigError(Exception):
    """Invalid flag combination or parameter (exit code 3)."""


class _Parser(argparse.ArgumentParser):
    # bad flags are configuration problems, not input problems
    def error(self, message):
        raise ConfigError(message)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _csv_line(fields: Sequence[str]) -> str:
    import io

    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow(fields)
    return buf.getvalue()


def _read_cells(path: str) -> list[tuple[int, list[str]]]:
    """CSV rows as (1-based line number, cells), skipping blank lines."""
    try:
        with open(path, newline="") as fh:
            raw = list(csv.reader(fh))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    rows = [(i + 1, [c.strip() for c in row]) for i, row in enumerate(raw)]
    rows = [(ln, cells) for ln, cells in rows if any(c != "" for c in cells)]
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def _parse_cell(cell: str, line: int, allow_missing: bool) -> float:
    if cell == "":
        if allow_missing:
            return float("nan")
        raise InputError(f"line {line}: empty cell (only --embedding missing accepts them)")
    try:
        return float(cell)
    except ValueError:
        raise InputError(f"line {line}: not a number: {cell!r}") from None


def _read_matrix(path: str, allow_missing: bool) -> np.ndarray:
    rows = _read_cells(path)
    width = len(rows[0][1])
    data = []
    for line, cells in rows:
        if len(cells) != width:
            raise InputError(f"line {line}: expected {width} columns, found {len(cells)}")
        data.append([_parse_cell(c, line, allow_missing) for c in cells])
    return np.asarray(data)


def _read_streams(path: str, allow_missing: bool) -> list[np.ndarray]:
    return [
        np.asarray([_parse_cell(c, line, allow_missing) for c in cells])
        for line, cells in _read_cells(path)
    ]


def _write_text(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", newline="") as fh:
            fh.write(text)


def _paths_from_input(args) -> list[np.ndarray]:
    allow_missing = args.embedding == "missing"
    embed = EMBEDDINGS[args.embedding]
    if args.layout == "columns":
        matrix = _read_matrix(args.input, allow_missing)
        if matrix.shape[1] == 1:
            return [embed(matrix[:, 0])]
        if args.embedding != "linear":
            raise ConfigError(
                f"--embedding {args.embedding} needs one-column input; "
                f"got {matrix.shape[1]} columns (multi-column files are taken "
                "as path coordinates with --embedding linear)"
            )
        if np.isnan(matrix).any():
            raise InputError("multi-column input cannot contain empty cells")
        return [matrix]
    streams = _read_streams(args.input, allow_missing)
    return [embed(s) for s in streams]


def cmd_sig(args) -> int:
    paths = _paths_from_input(args)
    dim = paths[0].shape[1]
    for p in paths[1:]:
        if p.shape[1] != dim:
            raise InputError("streams embed to inconsistent dimensions")
    lines = []
    if args.log:
        basis = lyndon_words(dim, args.depth)
        lines.append(_csv_line([word_label(w, log=True) for w in basis.words]))
        for p in paths:
            coords = log_signature_coords(signature(p, args.depth), basis).coords
            lines.append(",".join(_fmt(c) for c in coords))
    else:
        lines.append(_csv_line([word_label(w) for w in words(dim, args.depth)]))
        for p in paths:
            lines.append(",".join(_fmt(c) for c in signature(p, args.depth).coeffs))
    _write_text("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_embed(args) -> int:
    if args.embedding == "cumsum-basepoint":
        matrix = _read_matrix(args.input, allow_missing=False)
        if matrix.shape[1] != 1:
            raise ConfigError("embed cumsum-basepoint needs one-column input")
        path = cumsum_basepoint(matrix[:, 0])[:, np.newaxis]
    else:
        paths = _paths_from_input(args)
        if len(paths) != 1:
            raise ConfigError("embed expects a single stream; use --layout columns")
        path = paths[0]
    header = ",".join(f"x{i + 1}" for i in range(path.shape[1]))
    lines = [header] + [",".join(_fmt(v) for v in row) for row in path]
    _write_text("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_features(args) -> int:
    allow_missing = args.embedding == "missing"
    streams = _read_streams(args.input, allow_missing)
    labels = None
    if args.labels:
        if any(s.size < 2 for s in streams):
            raise InputError("rows too short to carry a trailing label")
        labels = [s[-1] for s in streams]
        streams = [s[:-1] for s in streams]
    try:
        fm = build_feature_matrix(
            streams,
            depth=args.depth,
            embedding=args.embedding,
            log_coords=args.log,
            standardize=args.standardize,
            labels=labels,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.output is not None and args.output.endswith(".json"):
        _write_text(fm.to_json() + "\n", args.output)
    else:
        _write_text(fm.to_csv(), args.output)
    return EXIT_OK


def cmd_classify_demo(args) -> int:
    result = run_arma_experiment(seed=args.seed, shuffle_labels=args.null)
    print(f"seed: {result.seed}   lambda1: {result.lambda1}   lambda2: {result.lambda2}")
    for name, cm in (("train", result.train), ("test", result.test)):
        print(f"{name}: accuracy {cm.accuracy:.4f}")
        print("            pred 0  pred 1")
        print(f"    true 0  {cm.tn:6d}  {cm.fp:6d}")
        print(f"    true 1  {cm.fn:6d}  {cm.tp:6d}")
    print(f"selected features: {', '.join(result.selected_features)}")
    if args.output is not None:
        with open(args.output, "w") as fh:
            fh.write(result.to_json() + "\n")
    return EXIT_OK


def cmd_cde_demo(args) -> int:
    rows = []
    # scalar exponential: dY = Y dX along a straight unit segment
    exp_field = LinearVectorField(np.ones((1, 1, 1)))
    exp_path = np.array([[0.0], [1.0]])
    exact_exp = float(np.exp(1.0))
    for depth in range(1, args.max_depth + 1):
        approx = linear_cde_solve_signature(exp_field, exp_path, [1.0], depth)
        rows.append(("exponential", depth, abs(float(approx[0]) - exact_exp)))
    # random contractive planar system, fixed by the seed
    rng = np.random.default_rng(args.seed)
    mats = rng.standard_normal((2, 2, 2))
    mats *= 0.4 / max(np.linalg.norm(mats[0], 2), np.linalg.norm(mats[1], 2))
    rand_field = LinearVectorField(mats)
    rand_path = rng.standard_normal((5, 2)) * 0.5
    y0 = np.array([1.0, -0.5])
    exact = exact_linear_cde_endpoint(rand_field, rand_path, y0)
    for depth in range(1, args.max_depth + 1):
        approx = linear_cde_solve_signature(rand_field, rand_path, y0, depth)
        rows.append(("random", depth, float(np.linalg.norm(approx - exact))))
    print(f"{'case':<12} {'depth':>5} {'abs error':>12}")
    for case, depth, err in rows:
        print(f"{case:<12} {depth:>5} {err:>12.3e}")
    if args.output is not None:
        lines = ["case,depth,error"] + [f"{c},{d},{_fmt(e)}" for c, d, e in rows]
        with open(args.output, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pathsig", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_embedding="linear"):
        p.add_argument("input", help="input CSV file")
        p.add_argument("--depth", "-L", type=int, default=2, help="truncation depth (default 2)")
        p.add_argument(
            "--embedding",
            default=default_embedding,
            choices=sorted(EMBEDDINGS),
            help=f"stream embedding (default {default_embedding})",
        )
        p.add_argument("--log", action="store_true", help="emit log-signature coordinates")
        p.add_argument("--output", "-o", default=None, help="output file (default stdout)")

    p_sig = sub.add_parser("sig", help="signatures of streams")
    add_common(p_sig)
    p_sig.add_argument(
        "--layout",
        choices=("columns", "rows"),
        default="columns",
        help="columns: one d-dim stream, one coordinate per column; "
        "rows: one 1-dim stream per row",
    )
    p_sig.set_defaults(func=cmd_sig)

    p_embed = sub.add_parser("embed", help="embedded path of one stream")
    p_embed.add_argument("input", help="input CSV file (single column)")
    p_embed.add_argument(
        "--embedding",
        default="leadlag",
        choices=sorted(EMBEDDINGS) + ["cumsum-basepoint"],
    )
    p_embed.add_argument("--output", "-o", default=None)
    p_embed.set_defaults(func=cmd_embed, layout="columns", depth=2, log=False)

    p_feat = sub.add_parser("features", help="feature matrix from streams (one per row)")
    add_common(p_feat, default_embedding="cumsum-leadlag")
    p_feat.add_argument("--labels", action="store_true", help="last column is a class label")
    p_feat.add_argument("--standardize", action="store_true", help="center/scale columns")
    p_feat.set_defaults(func=cmd_features)

    p_cls = sub.add_parser("classify-demo", help="ARMA(1,1) stream classification demo")
    p_cls.add_argument("--seed", type=int, default=0)
    p_cls.add_argument("--null", action="store_true", help="shuffle labels (sanity check)")
    p_cls.add_argument("--output", "-o", default=None, help="JSON report file")
    p_cls.set_defaults(func=cmd_classify_demo)

    p_cde = sub.add_parser("cde-demo", help="linear CDE truncation-error table")
    p_cde.add_argument("--seed", type=int, default=0)
    p_cde.add_argument("--max-depth", type=int, default=12)
    p_cde.add_argument("--output", "-o", default=None, help="plot-ready CSV file")
    p_cde.set_defaults(func=cmd_cde_demo)
    return parser


def _validate(args) -> None:
    depth = getattr(args, "depth", None)
    if depth is not None and depth < 1:
        raise ConfigError(f"--depth must be >= 1, got {depth}")
    max_depth = getattr(args, "max_depth", None)
    if max_depth is not None and max_depth < 1:
        raise ConfigError(f"--max-depth must be >= 1, got {max_depth}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args)
        return args.func(args)
    except ConfigError as exc:
        print(f"pathsig: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InputError as exc:
        print(f"pathsig: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
