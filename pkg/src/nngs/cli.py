"""Command-line front-end: similarity reports, sweeps, blob tables, case studies.

Exit codes: 0 success, 2 bad input (files, flags, ranges), 1 internal error.
Identical invocations produce byte-identical output files; every JSON report
embeds its fully resolved configuration, and runs writing CSV echo the
configuration to stderr instead.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from .core import Metric, PointCloud, align_by_intersection, derive_seed, validate_paired
from .errors import COutOfRangeError, NNGSError, TooFewPairsError
from .io_formats import (
    read_csv_embeddings,
    read_glove_text,
    report_payload,
    write_embeddings_csv,
    write_report,
)
from .similarity import hyper_baseline, k_from_c, nngs
from .synthetic import (
    BLOB_METHOD_COLUMNS,
    BLOB_PRESETS,
    BlobSpec,
    compare_blob_methods,
    dim_invariance_sweep,
    noise_sweep,
    size_invariance_sweep,
)
from .tasks import (
    TaskSample,
    accuracy_similarity_study,
    analogy_accuracy,
    class_mean_embeddings,
    parse_analogy_file,
    task_point_clouds,
    zero_shot_accuracy,
)

logger = logging.getLogger(__name__)

PRESET_NAMES = {
    "scales": "scales",
    "unbalanced": "unbalanced",
    "noise-within": "noise-within",
    "shuffled": "shuffled",
}


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part.strip()]


def _float_list(text: str) -> list[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def _default_threads() -> int:
    env = os.environ.get("NNGS_THREADS", "").strip()
    return int(env) if env else 1


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="output path (default: stdout)")
    parser.add_argument(
        "--format", choices=("json", "csv"), default=None,
        help="report format (default: by --out extension, else json)",
    )


def _resolve_format(args: argparse.Namespace) -> str:
    if args.format:
        return args.format
    if args.out is not None and args.out.suffix.lower() == ".csv":
        return "csv"
    return "json"


def _emit(report, args: argparse.Namespace, config: dict) -> None:
    fmt = _resolve_format(args)
    if fmt == "csv":
        print(json.dumps({"config": config}), file=sys.stderr)
    if args.out is None:
        write_report(report, fmt, sys.stdout, config=config)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_report(report, fmt, fh, config=config)


def _config_from(args: argparse.Namespace, command: str) -> dict:
    skip = {"func", "out", "format"}
    config = {"command": command}
    for key, value in sorted(vars(args).items()):
        if key in skip or callable(value):
            continue
        if isinstance(value, Path):
            value = str(value)
        elif isinstance(value, Metric):
            value = str(value)
        elif isinstance(value, list) and value and isinstance(value[0], Path):
            value = [str(v) for v in value]
        config[key] = value
    return config


def _load_cloud(path: Path, input_format: str, id_column: str) -> PointCloud:
    fmt = input_format
    if fmt == "auto":
        fmt = "csv" if path.suffix.lower() == ".csv" else "glove"
    with open(path, "r", encoding="utf-8", newline="") as fh:
        if fmt == "csv":
            return read_csv_embeddings(fh, id_column=id_column)
        return read_glove_text(fh)


def _require(args: argparse.Namespace, kind: str, *names: str) -> None:
    missing = [f"--{name.replace('_', '-')}" for name in names if getattr(args, name) is None]
    if missing:
        raise NNGSError(f"sweep {kind} needs {', '.join(missing)}")




def _rho_line(method: str, report) -> str:
    if report.rho is None:
        return f"{method}: rho undefined (constant accuracy or similarity)"
    return f"{method}: rho={report.rho:.4f} p={report.p_value:.3g}"


# --- subcommands -------------------------------------------------------------

def _cmd_compare(args: argparse.Namespace) -> int:
    x = _load_cloud(args.x_file, args.input_format, args.id_column)
    y = _load_cloud(args.y_file, args.input_format, args.id_column)
    pair = validate_paired(x, y) if args.align == "strict" else align_by_intersection(x, y)
    k = args.k if args.k is not None else k_from_c(args.c, pair.n)
    report = nngs(pair, k, args.metric_x, args.metric_y or args.metric_x)
    config = _config_from(args, "compare")
    config["resolved_k"] = report.k
    config["resolved_c"] = report.c
    config["n"] = pair.n
    _emit(report, args, config)
    return 0


def _default_ks(n: int) -> list[int]:
    """Log-spaced neighborhood grid over [1, n-1] for curve sweeps."""
    grid = np.unique(np.rint(np.geomspace(1, n - 1, num=12)).astype(int))
    return [int(k) for k in grid]


def _cmd_sweep(args: argparse.Namespace) -> int:
    threads = args.threads
    if args.kind == "noise":
        _require(args, "noise", "n", "d", "snr")
        ks = args.ks if args.ks is not None else _default_ks(args.n)
        result = noise_sweep(
            args.n, args.d, ks, args.snr,
            trials=args.trials, seed=args.seed, metric=args.metric, threads=threads,
        )
    elif args.kind == "snr":
        _require(args, "snr", "n", "d", "k", "snr")
        result = noise_sweep(
            args.n, args.d, [args.k], args.snr,
            trials=args.trials, seed=args.seed, metric=args.metric, threads=threads,
        )
    elif args.kind == "size":
        _require(args, "size", "c", "ns", "snr_db", "d")
        result = size_invariance_sweep(
            args.c, args.ns, args.snr_db, args.d,
            trials=args.trials, seed=args.seed, metric=args.metric, threads=threads,
        )
    else:
        _require(args, "dim", "k", "n", "ds", "snr_db")
        result = dim_invariance_sweep(
            args.k, args.n, args.ds, args.snr_db,
            trials=args.trials, seed=args.seed, metric=args.metric, threads=threads,
        )
    _emit(result, args, _config_from(args, f"sweep-{args.kind}"))
    return 0


def _cmd_blobs(args: argparse.Namespace) -> int:
    if args.spec is not None:
        with open(args.spec, "r", encoding="utf-8") as fh:
            spec = BlobSpec(**json.load(fh))
        dataset = str(args.spec)
    else:
        spec = BLOB_PRESETS[args.preset]
        dataset = args.preset

    wanted = BLOB_METHOD_COLUMNS
    if args.report == "nngs":
        wanted = tuple(c for c in wanted if c.startswith("nngs"))
    elif args.report == "cka":
        wanted = tuple(c for c in wanted if c.startswith("cka"))

    runs = [
        compare_blob_methods(spec, derive_seed(args.seed, "blobs", t))
        for t in range(args.trials)
    ]
    values = {}
    for column in wanted:
        series = [run[column] for run in runs]
        mean = sum(series) / len(series)
        if len(series) > 1:
            var = sum((v - mean) ** 2 for v in series) / (len(series) - 1)
        else:
            var = 0.0
        values[column] = {"mean": mean, "std": var**0.5}

    config = _config_from(args, "blobs")
    config["dataset"] = dataset
    fmt = _resolve_format(args)
    payload_lines = None
    if fmt == "csv":
        payload_lines = ["method,mean,std"] + [
            f"{col},{values[col]['mean']:.12g},{values[col]['std']:.12g}" for col in wanted
        ]
        text = "\n".join(payload_lines) + "\n"
        print(json.dumps({"config": config}), file=sys.stderr)
    else:
        payload = {
            "config": config,
            "type": "blob_comparison",
            "dataset": dataset,
            "n_trials": args.trials,
            "values": {
                col: {"mean": float(f"{values[col]['mean']:.12g}"),
                      "std": float(f"{values[col]['std']:.12g}")}
                for col in wanted
            },
        }
        text = json.dumps(payload, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return 0


def _cmd_baseline(args: argparse.Namespace) -> int:
    if args.k is not None:
        if args.n is None:
            raise NNGSError("--k needs --n to resolve the baseline")
        k = args.k
        n = args.n
    elif args.c is not None:
        if args.n is None:
            c = args.c
            if not 0.0 < c <= 1.0:
                raise COutOfRangeError(f"c must be in (0, 1], got {c}")
            print(f"c={c:.12g} H={c / (2.0 - c):.12g}")
            return 0
        k = k_from_c(args.c, args.n)
        n = args.n
    else:
        raise NNGSError("give --k (with --n) or --c")
    h = hyper_baseline(k, n)
    print(f"k={k} c={k / (n - 1):.12g} H={h:.12g}")
    return 0


def _cmd_analogy(args: argparse.Namespace) -> int:
    with open(args.embeddings, "r", encoding="utf-8", newline="") as fh:
        emb = read_glove_text(fh)
    questions = Path(args.questions).read_text(encoding="utf-8")
    categories = parse_analogy_file(questions)

    samples = []
    task_stats = []
    for name, quads in categories.items():
        accuracy, n_eval, n_skip = analogy_accuracy(emb, quads)
        if n_eval == 0:
            logger.warning("category %r: no in-vocabulary questions, skipped", name)
            continue
        try:
            pair = task_point_clouds(quads, emb)
        except TooFewPairsError:
            logger.warning("category %r: too few usable word pairs, skipped", name)
            continue
        samples.append(TaskSample(name, pair, accuracy))
        task_stats.append(
            {"name": name, "accuracy": accuracy, "n_evaluated": n_eval,
             "n_skipped": n_skip, "n_pairs": pair.n}
        )
    if len(samples) < 3:
        raise TooFewPairsError(
            f"only {len(samples)} categories usable; need at least 3 for a correlation"
        )

    reports = accuracy_similarity_study(
        samples,
        k=args.k,
        c=args.c if args.k is None else None,
        metric_x=args.metric,
        metric_y=args.metric,
        with_cka=args.with_cka,
    )
    config = _config_from(args, "analogy")
    config["n_categories"] = len(samples)
    for method, report in reports.items():
        print(_rho_line(method, report), file=sys.stderr)
    if _resolve_format(args) == "json":
        payload = {"config": config, "type": "analogy_study", "tasks": task_stats,
                   "reports": {m: report_payload(r) for m, r in reports.items()}}
        text = json.dumps(payload, indent=2) + "\n"
        if args.out is None:
            sys.stdout.write(text)
        else:
            args.out.write_text(text, encoding="utf-8")
    else:
        _emit(reports["nngs"], args, config)
    return 0


def _load_text_clouds(paths: list[Path]) -> dict[str, PointCloud]:
    """One text cloud per template: either one file each, or one CSV with a
    `template` column that gets split."""
    import csv as _csv
    import io

    clouds: dict[str, PointCloud] = {}
    for path in paths:
        text = path.read_text(encoding="utf-8")
        head = next(_csv.reader(io.StringIO(text)), [])
        if "template" in head:
            tpl_pos = head.index("template")
            reduced_header = [v for i, v in enumerate(head) if i != tpl_pos]
            groups: dict[str, list[list[str]]] = {}
            for row in list(_csv.reader(io.StringIO(text)))[1:]:
                groups.setdefault(row[tpl_pos], []).append(
                    [v for i, v in enumerate(row) if i != tpl_pos]
                )
            for template, records in groups.items():
                buf = io.StringIO()
                writer = _csv.writer(buf, lineterminator="\n")
                writer.writerow(reduced_header)
                writer.writerows(records)
                buf.seek(0)
                clouds[template] = read_csv_embeddings(buf)
        else:
            clouds[path.stem] = read_csv_embeddings(io.StringIO(text))
    return clouds


def _cmd_zeroshot(args: argparse.Namespace) -> int:
    with open(args.image_embeddings, "r", encoding="utf-8", newline="") as fh:
        images = read_csv_embeddings(fh, id_column="id", label_column="label")
    text_clouds = _load_text_clouds(args.text_embeddings)

    means = class_mean_embeddings(images)
    samples = []
    accuracies = {}
    for template in sorted(text_clouds):
        texts = text_clouds[template]
        accuracy = zero_shot_accuracy(images, texts)
        rows = [texts.id_to_row[cls] for cls in images.classes]
        pair = validate_paired(
            means, PointCloud(means.ids, texts.data[rows])
        )
        samples.append(TaskSample(template, pair, accuracy))
        accuracies[template] = accuracy

    reports = accuracy_similarity_study(
        samples, k=args.k, metric_x=Metric.cosine(), with_cka=args.with_cka
    )
    means_out = args.means_out
    if means_out is None:
        base = args.out if args.out is not None else Path("zeroshot.json")
        means_out = base.with_name(base.stem + "-class-means.csv")
    with open(means_out, "w", encoding="utf-8", newline="") as fh:
        write_embeddings_csv(means, fh)

    config = _config_from(args, "zeroshot")
    config["n_templates"] = len(samples)
    config["class_means_file"] = str(means_out)
    for method, report in reports.items():
        print(_rho_line(method, report), file=sys.stderr)
    if _resolve_format(args) == "json":
        payload = {"config": config, "type": "zeroshot_study",
                   "reports": {m: report_payload(r) for m, r in reports.items()}}
        text = json.dumps(payload, indent=2) + "\n"
        if args.out is None:
            sys.stdout.write(text)
        else:
            args.out.write_text(text, encoding="utf-8")
    else:
        _emit(reports["nngs"], args, config)
    return 0


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nngs",
        description="Structural similarity between paired embedding point clouds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compare", help="similarity report for two embedding files")
    p.add_argument("x_file", type=Path)
    p.add_argument("y_file", type=Path)
    size = p.add_mutually_exclusive_group(required=True)
    size.add_argument("--k", type=int, default=None, help="neighborhood size")
    size.add_argument("--c", type=float, default=None, help="relative neighborhood size")
    p.add_argument("--metric-x", type=Metric.parse, default=Metric.cosine(),
                   help="cosine | minkowski[:order] (default cosine)")
    p.add_argument("--metric-y", type=Metric.parse, default=None)
    p.add_argument("--align", choices=("strict", "intersect"), default="strict")
    p.add_argument("--input-format", choices=("auto", "glove", "csv"), default="auto")
    p.add_argument("--id-column", default="id")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("sweep", help="synthetic experiment sweeps")
    p.add_argument("kind", choices=("noise", "size", "dim", "snr"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--ks", type=_int_list, default=None,
                   help="comma-separated ks (noise sweep default: log grid over [1, n-1])")
    p.add_argument("--ns", type=_int_list, default=None, help="comma-separated cloud sizes")
    p.add_argument("--ds", type=_int_list, default=None, help="comma-separated dimensionalities")
    p.add_argument("--snr", type=_float_list, default=None,
                   help="comma-separated SNR grid in dB (noise/snr sweeps)")
    p.add_argument("--snr-db", type=float, default=None,
                   help="single SNR in dB (size/dim sweeps)")
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--metric", type=Metric.parse, default=Metric.cosine())
    p.add_argument("--threads", type=int, default=_default_threads())
    _add_output_flags(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("blobs", help="method comparison on an aligned blob dataset")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--preset", choices=tuple(PRESET_NAMES))
    target.add_argument("--spec", type=Path, help="JSON file with blob parameters")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--report", choices=("nngs", "cka", "both"), default="both")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_blobs)

    p = sub.add_parser("baseline", help="random-overlap floor H for a neighborhood size")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--c", type=float, default=None)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("analogy", help="word-analogy accuracy vs similarity study")
    p.add_argument("--embeddings", type=Path, required=True, help="GloVe-format text file")
    p.add_argument("--questions", type=Path, required=True)
    p.add_argument("--c", type=float, default=0.3)
    p.add_argument("--k", type=int, default=None, help="fixed k overriding --c")
    p.add_argument("--metric", type=Metric.parse, default=Metric.cosine())
    p.add_argument("--with-cka", action="store_true")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_analogy)

    p = sub.add_parser("zeroshot", help="zero-shot accuracy vs similarity study")
    p.add_argument("--image-embeddings", type=Path, required=True,
                   help="CSV with id,label,x0,... rows")
    p.add_argument("--text-embeddings", type=Path, nargs="+", required=True,
                   help="one CSV per template, or one CSV with a template column")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--with-cka", action="store_true")
    p.add_argument("--means-out", type=Path, default=None,
                   help="where to cache the class-mean image cloud")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_zeroshot)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NNGSError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
