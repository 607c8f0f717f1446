"""``veridict`` command-line interface.

Exit codes: 0 on success, 1 on runtime failure, 2 on usage errors.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from sklearn.pipeline import Pipeline

from . import __version__
from ._io import atomic_write_text
from .augment import AugmentConfig, SynonymLexicon, augment_corpus, load_lexicon
from .classifiers import CLASSIFIER_KINDS, TrainConfig
from .corpus import SplitConfig, load_csv, write_csv
from .evaluation import (
    DEFAULT_MAX_FEATURES,
    DEFAULT_MODES,
    DEFAULT_RANGES,
    ExperimentConfig,
    Protocol,
    build_pipeline,
    comparison_report,
    evaluate,
    sweep,
)
from .exceptions import VeridictError
from .features import FeatureConfig, FeatureMode, NgramRange
from .persistence import ModelBundle, load_model, save_model
from .reporting import ReportRow, load_report_csv, render_svg, report_csv, sweep_csv
from .textprep import StopwordList, TextPreprocessor

SEED_ENV = "VERIDICT_SEED"


class UsageError(Exception):
    """Invalid flag combination detected after argument parsing."""


def _ngram(text):
    try:
        lo, hi = (int(p) for p in text.split(","))
        return NgramRange(lo, hi)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected LO,HI with 1 <= LO <= HI <= 5, got {text!r}") from exc


def _positive_int(text):
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {value}")
    return value


NORM_CHOICES = ("auto", "l2", "none")


def _norm(choice):
    return None if choice == "none" else choice


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from exc


def _add_experiment_flags(p):
    p.add_argument("--data", required=True, help="corpus CSV")
    p.add_argument("--classifier", choices=CLASSIFIER_KINDS)
    p.add_argument("--features", choices=[m.value for m in FeatureMode])
    p.add_argument("--ngram", type=_ngram, metavar="LO,HI")
    p.add_argument("--max-features", type=_positive_int, metavar="N")
    p.add_argument("--protocol", choices=[p.value for p in Protocol])
    p.add_argument("--norm", choices=NORM_CHOICES, help="row normalization (default auto)")
    p.add_argument("--seed", type=int, help=f"split and training seed (default ${SEED_ENV} or 0)")
    p.add_argument("--k", type=int, help="folds for k-fold (default 5)")
    p.add_argument("--test-fraction", type=float, help="hold-out test share (default 0.2)")
    p.add_argument("--config", help="JSON experiment config; flags take precedence")
    p.add_argument("--timing", action="store_true", help="fill the wall_time_s column")


def build_parser():
    parser = argparse.ArgumentParser(prog="veridict", description="Deceptive review detection experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a corpus CSV and print its summary")
    p.add_argument("--data", required=True)
    p.add_argument("--out", help="write a normalized copy of the corpus here")

    p = sub.add_parser("eval", help="run one experiment and write a report")
    _add_experiment_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--svg", action="store_true", help="also write report.svg")
    p.add_argument("--augment", type=int, metavar="N", help="add N synonym copies per training review")
    p.add_argument("--lexicon", help="synonym lexicon TSV (default: bundled)")
    p.add_argument("--save-model", metavar="PATH", help="save the trained model")

    p = sub.add_parser("sweep", help="evaluate a grid of feature and classifier settings")
    p.add_argument("--data", required=True)
    p.add_argument("--ranges", type=_ngram, nargs="+", metavar="LO,HI")
    p.add_argument("--max-features", type=_positive_int, nargs="+", metavar="N")
    p.add_argument("--modes", choices=[m.value for m in FeatureMode], nargs="+")
    p.add_argument("--classifiers", choices=CLASSIFIER_KINDS, nargs="+")
    p.add_argument("--protocol", choices=[p.value for p in Protocol], default="holdout")
    p.add_argument("--norm", choices=NORM_CHOICES, default="auto")
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (-1 for all cores)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--timing", action="store_true")

    p = sub.add_parser("augment", help="write a synonym-augmented copy of a training CSV")
    p.add_argument("--data", required=True)
    p.add_argument("--lexicon", help="synonym lexicon TSV (default: bundled)")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--fraction", type=float, default=0.1, help="share of eligible words replaced")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True, help="output CSV")

    p = sub.add_parser("report", help="comparison table and chart from report CSVs")
    p.add_argument("reports", nargs="+", help="report or sweep CSV files")
    p.add_argument("--out", help="output directory for comparison.txt and report.svg")

    p = sub.add_parser("predict", help="label reviews with a saved model")
    p.add_argument("--model", required=True)
    p.add_argument("--data", required=True, help="CSV with a text column")
    p.add_argument("--out", help="output CSV (default stdout)")
    return parser


def experiment_config(args):
    """Resolve flags over the config file over built-in defaults."""
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise UsageError("--config must hold a JSON object")
    try:
        cfg = ExperimentConfig.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid --config: {exc}") from exc

    seed = args.seed
    if seed is None and "seed" not in data.get("split", {}):
        seed = _default_seed()
    feature = cfg.feature
    updates = {}
    if args.features is not None:
        updates["mode"] = FeatureMode(args.features)
    if args.ngram is not None:
        updates["ngram_range"] = args.ngram
    if args.max_features is not None:
        updates["max_features"] = args.max_features
    if args.norm is not None:
        updates["norm"] = _norm(args.norm)
    feature = replace(feature, **updates)

    split = cfg.split
    try:
        if seed is not None:
            split = replace(split, seed=seed)
        if args.k is not None:
            split = replace(split, k=args.k)
        if args.test_fraction is not None:
            split = replace(split, test_fraction=args.test_fraction)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    train = replace(cfg.train, seed=split.seed)

    augment = cfg.augment
    if getattr(args, "augment", None) is not None:
        if args.augment < 1:
            raise UsageError("--augment must be >= 1")
        augment = AugmentConfig(n_aug=args.augment, seed=split.seed)
    elif augment is not None:
        augment = replace(augment, seed=split.seed)

    return ExperimentConfig(
        feature=feature,
        classifier=args.classifier or cfg.classifier,
        train=train,
        split=split,
        protocol=Protocol(args.protocol) if args.protocol else cfg.protocol,
        augment=augment,
    )


def _lexicon(path):
    return load_lexicon(path) if path else SynonymLexicon.default()


def _model_bundle(corpus, cfg, report, lexicon):
    """Hold-out: the evaluated model itself. K-fold: a refit on the whole corpus."""
    if cfg.protocol is Protocol.HOLDOUT:
        fitted = report.models[0]
        pipe = Pipeline([("prep", TextPreprocessor().fit(None)), *fitted.steps])
    else:
        train = corpus
        if cfg.augment is not None:
            train = augment_corpus(corpus, lexicon, cfg.augment)
        pipe = build_pipeline(cfg).fit(list(train.texts), list(train.labels))
    return ModelBundle.from_pipeline(pipe, cfg.classifier, cfg.train, corpus=corpus)


def cmd_ingest(args):
    corpus = load_csv(args.data)
    counts = {label.value: n for label, n in corpus.label_counts.items()}
    print(f"{len(corpus)} reviews: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
    if args.out:
        write_csv(corpus, args.out)
        print(f"wrote {args.out}")
    return 0


def cmd_eval(args):
    cfg = experiment_config(args)
    corpus = load_csv(args.data)
    lexicon = _lexicon(args.lexicon) if cfg.augment is not None else None
    report = evaluate(corpus, cfg, lexicon)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    atomic_write_text(out / "report.csv", report_csv([report], timing=args.timing))
    detail = {
        "config": cfg.to_dict(),
        "accuracy": report.accuracy,
        "confusion": [list(r) for r in report.confusion],
        "per_fold": list(report.per_fold) if report.per_fold else None,
    }
    if args.timing:
        detail["wall_time_s"] = report.wall_time
    atomic_write_text(out / "report.json", json.dumps(detail, indent=1, sort_keys=True) + "\n")
    if args.svg:
        atomic_write_text(out / "report.svg", render_svg([ReportRow.from_result(report)]))
    if args.save_model:
        save_model(_model_bundle(corpus, cfg, report, lexicon), args.save_model)

    print(f"{cfg.classifier} {cfg.feature.mode.value} {cfg.protocol.value} accuracy {report.accuracy:.4f}")
    if report.per_fold:
        print("per fold: " + " ".join(f"{a:.4f}" for a in report.per_fold))
    return 0


def eval_command(row, data, seed, norm="auto"):
    """Ready-to-run ``veridict eval`` invocation reproducing a sweep row."""
    lo, hi = row.feature.ngram_range
    parts = [
        "veridict eval", f"--data {data}", f"--classifier {row.classifier}",
        f"--features {row.feature.mode.value}", f"--ngram {lo},{hi}",
        f"--max-features {row.feature.max_features}", f"--protocol {row.protocol.value}",
        f"--seed {seed}",
    ]
    if norm != "auto":
        parts.append(f"--norm {norm}")
    parts.append("--out <dir>")
    return " ".join(parts)


def cmd_sweep(args):
    seed = args.seed if args.seed is not None else _default_seed() or 0
    corpus = load_csv(args.data)
    split = SplitConfig(seed=seed)
    result = sweep(
        corpus,
        ranges=args.ranges or DEFAULT_RANGES,
        max_features=args.max_features or DEFAULT_MAX_FEATURES,
        modes=args.modes or DEFAULT_MODES,
        classifiers=args.classifiers or CLASSIFIER_KINDS,
        split=split,
        train=TrainConfig(seed=seed),
        protocol=args.protocol,
        norm=_norm(args.norm),
        n_jobs=args.jobs,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    atomic_write_text(out / "sweep.csv", sweep_csv(result, timing=args.timing))
    if args.svg:
        atomic_write_text(out / "sweep.svg", render_svg([ReportRow.from_result(r) for r in result.rows]))
    failed = sum(r.failed for r in result.rows)
    print(f"{len(result.rows)} cells evaluated, {failed} failed")
    best = result.best()
    if best is None:
        print("no cell succeeded", file=sys.stderr)
        return 1
    print(f"best accuracy {best.accuracy:.4f}:")
    print(eval_command(best, args.data, seed, args.norm))
    return 0


def cmd_augment(args):
    if args.n < 1:
        raise UsageError(f"--n must be >= 1, got {args.n}")
    if not 0.0 < args.fraction <= 1.0:
        raise UsageError(f"--fraction must lie in (0, 1], got {args.fraction}")
    seed = args.seed if args.seed is not None else _default_seed() or 0
    corpus = load_csv(args.data)
    lexicon = _lexicon(args.lexicon)
    cfg = AugmentConfig(n_aug=args.n, replace_fraction=args.fraction, seed=seed)
    out = augment_corpus(corpus, lexicon, cfg, StopwordList.default())
    write_csv(out, args.out)
    print(f"{len(corpus)} reviews in, {len(out)} reviews out")
    return 0


def cmd_report(args):
    rows = []
    for path in args.reports:
        rows.extend(load_report_csv(path))
    if not rows:
        raise VeridictError("report files contain no rows")
    table = comparison_report(_RowReport.wrap(r) for r in rows if not r.error)
    sys.stdout.write(table)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        atomic_write_text(out / "comparison.txt", table)
        atomic_write_text(out / "report.svg", render_svg(rows))
    return 0


class _RowReport:
    """Adapter giving a parsed CSV row the shape ``comparison_report`` reads."""

    def __init__(self, row):
        self.accuracy = row.accuracy
        self.config = ExperimentConfig(
            feature=FeatureConfig(
                ngram_range=(row.ngram_lo, row.ngram_hi),
                max_features=row.max_features,
                mode=row.feature_mode,
            ),
            classifier=row.classifier,
            protocol=row.protocol,
        )

    @classmethod
    def wrap(cls, row):
        return cls(row)


def cmd_predict(args):
    bundle = load_model(args.model)
    corpus_texts = _read_texts(args.data)
    labels = bundle.predict(corpus_texts)
    lines = [["row", "prediction"]] + [[i, getattr(lab, "value", lab)] for i, lab in enumerate(labels)]
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(lines)
    if args.out:
        atomic_write_text(args.out, buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def _read_texts(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        fields = {f.strip().lower(): f for f in reader.fieldnames or ()}
        if "text" not in fields:
            raise VeridictError(f"{path}: no text column")
        return [rec[fields["text"]] for rec in reader]


COMMANDS = {
    "ingest": cmd_ingest,
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "augment": cmd_augment,
    "report": cmd_report,
    "predict": cmd_predict,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)  # exits 2 on malformed flags
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"veridict: error: {exc}", file=sys.stderr)
        return 2
    except (VeridictError, OSError, ValueError, KeyError) as exc:
        print(f"veridict: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
