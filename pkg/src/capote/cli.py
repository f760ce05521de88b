"""Batch command-line interface.

Four subcommands: ``ingest`` validates and normalizes a corpus, ``score``
runs the aspect scorers plus the model over a corpus, ``fit`` runs the full
crowd-study analysis, and ``crowdtruth`` emits agreement reports.  Every run
writes a manifest with input and resource checksums so results can be
audited and reproduced.  Outputs are plain files, written atomically.

Exit codes: 0 success, 1 data validation, 2 configuration/resources,
3 statistical preconditions.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .corpus import dumps_debate, load_annotations, load_corpus, scan_corpus
from .crowdtruth import descriptive_report, aspect_scores_from_annotations, worker_quality
from .errors import CapoteError, ConfigurationError, CorpusFormatError, StatsError
from .model import fit_from_annotations, resolve_model, score_corpus
from .resources import CONFIG_ENV, ScorerConfig, load_resources
from .corpus import QUESTIONS
from .stats import regression_csv_rows

EXIT_OK = 0
EXIT_DATA = 1
EXIT_CONFIG = 2
EXIT_STATS = 3


def _sha256_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    os.replace(tmp, path)


def _csv_text(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _write_manifest(
    path: Path,
    command: str,
    inputs: dict[str, Path],
    resource_checksums: dict[str, str],
    config_snapshot: dict,
) -> None:
    manifest = {
        "command": command,
        "inputs": {str(p): _sha256_file(p) for p in inputs.values()},
        "resources": resource_checksums,
        "config": config_snapshot,
        "tool_version": __version__,
        "started_at": datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
    }
    _atomic_write(path, json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _load_config(args) -> ScorerConfig:
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV)
    config = ScorerConfig.from_file(path) if path else ScorerConfig()
    overrides = {}
    for name in (
        "actor_ref_count",
        "sentiment_threshold",
        "emotion_gain",
        "source_ref_count",
        "span_ref_days",
        "burst_ref_count",
        "burst_sigma",
    ):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    return config.with_overrides(**overrides) if overrides else config


def cmd_ingest(args) -> int:
    corpus_path = Path(args.corpus)
    if not corpus_path.exists():
        print(f"error: corpus file not found: {corpus_path}", file=sys.stderr)
        return EXIT_CONFIG
    debates, issues = scan_corpus(corpus_path)
    out_path = Path(args.out)
    normalized = "".join(dumps_debate(d) + "\n" for d in debates)
    _atomic_write(out_path, normalized)
    report = {
        "debates": len(debates),
        "errors": [{"line": issue.line, "message": issue.message} for issue in issues],
    }
    report_path = Path(args.report) if args.report else out_path.with_name(out_path.name + ".report.json")
    _atomic_write(report_path, json.dumps(report, indent=2) + "\n")
    _write_manifest(
        out_path.with_name(out_path.name + ".manifest.json"),
        "ingest",
        {"corpus": corpus_path},
        {},
        {},
    )
    print(f"{len(debates)} debates, {len(issues)} errors")
    for issue in issues:
        print(f"error: {issue}", file=sys.stderr)
    return EXIT_DATA if issues else EXIT_OK


def cmd_score(args) -> int:
    corpus_path = Path(args.corpus)
    if not corpus_path.exists():
        print(f"error: corpus file not found: {corpus_path}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        resources = load_resources(args.lexicon, args.gazetteer)
        config = _load_config(args)
        model = resolve_model(args.model)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        debates = load_corpus(corpus_path)
    except CorpusFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA

    results = score_corpus(debates, resources, model, config)
    rows = [
        [
            "debate_id",
            "actors",
            "polarity",
            "openness",
            "time",
            "emotion",
            "controversy_raw",
            "controversy",
        ]
    ]
    for item in results:
        s = item.scores
        rows.append(
            [
                item.debate_id,
                f"{s.actors:.4f}",
                f"{s.polarity:.4f}",
                f"{s.openness:.4f}",
                f"{s.time:.4f}",
                f"{s.emotion:.4f}",
                f"{item.prediction.raw:.4f}",
                f"{item.prediction.score:.4f}",
            ]
        )
    out_path = Path(args.out)
    _atomic_write(out_path, _csv_text(rows))
    _write_manifest(
        out_path.with_name(out_path.name + ".manifest.json"),
        "score",
        {"corpus": corpus_path},
        resources.checksums(),
        {"model": model.provenance, **{k: v for k, v in vars(config).items()}},
    )
    print(f"scored {len(results)} debates -> {out_path}")
    return EXIT_OK


def _run_analysis_command(args, runner) -> int:
    annotations_path = Path(args.annotations)
    if not annotations_path.exists():
        print(f"error: annotation file not found: {annotations_path}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        annotations = load_annotations(annotations_path)
    except CorpusFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    out_dir = Path(args.out_dir)
    try:
        runner(annotations, out_dir)
    except StatsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATS
    _write_manifest(out_dir / "manifest.json", args.command, {"annotations": annotations_path}, {}, {})
    return EXIT_OK


def cmd_fit(args) -> int:
    def run(annotations, out_dir: Path) -> None:
        report = fit_from_annotations(annotations)
        _atomic_write(out_dir / "descriptive.csv", _csv_text(report.descriptive.to_csv_rows()))
        _atomic_write(out_dir / "correlations.csv", _csv_text(report.correlations.to_csv_rows()))
        _atomic_write(out_dir / "regression_all5.csv", _csv_text(regression_csv_rows(report.fit_all5)))
        for aspect, fit in report.fits_4of5.items():
            _atomic_write(out_dir / f"regression_omit_{aspect}.csv", _csv_text(regression_csv_rows(fit)))
        _atomic_write(out_dir / "report.txt", report.to_text())
        print(
            f"fitted {report.n_articles} articles; "
            f"adjusted R^2 {report.fit_all5.adj_r_squared:.4f} -> {out_dir}"
        )

    return _run_analysis_command(args, run)


def cmd_crowdtruth(args) -> int:
    def run(annotations, out_dir: Path) -> None:
        report = descriptive_report(annotations)
        _atomic_write(out_dir / "question_report.csv", _csv_text(report.to_csv_rows()))
        scores = aspect_scores_from_annotations(annotations)
        score_rows = [["article_id", *QUESTIONS]]
        for article_id in sorted(scores):
            s = scores[article_id]
            score_rows.append(
                [article_id, *(f"{getattr(s, q):.4f}" for q in QUESTIONS)]
            )
        _atomic_write(out_dir / "article_scores.csv", _csv_text(score_rows))
        quality_rows = [["worker_id", "mean_agreement", "n_articles"]]
        for wq in worker_quality(annotations):
            quality_rows.append([wq.worker_id, f"{wq.mean_agreement:.4f}", str(wq.n_articles)])
        _atomic_write(out_dir / "worker_quality.csv", _csv_text(quality_rows))
        print(f"aggregated {report.n_articles} articles -> {out_dir}")

    return _run_analysis_command(args, run)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="capote",
        description="Controversy analytics over debate corpora and crowd annotations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="validate a corpus and write a normalized copy")
    p_ingest.add_argument("corpus", help="JSONL corpus file")
    p_ingest.add_argument("--out", "-o", required=True, help="normalized JSONL output path")
    p_ingest.add_argument("--report", help="validation report path (default: <out>.report.json)")
    p_ingest.set_defaults(func=cmd_ingest)

    p_score = sub.add_parser("score", help="score debates and predict controversy")
    p_score.add_argument("corpus", help="JSONL corpus file")
    p_score.add_argument("--out", "-o", required=True, help="output CSV path")
    p_score.add_argument("--lexicon", help="lexicon TSV (default: bundled)")
    p_score.add_argument("--gazetteer", help="gazetteer file (default: bundled)")
    p_score.add_argument("--config", help=f"scorer config file (or env {CONFIG_ENV})")
    p_score.add_argument(
        "--model",
        default="paper-table-3",
        help="built-in model name or model file path (default: paper-table-3)",
    )
    p_score.add_argument("--actor-ref-count", dest="actor_ref_count", type=int)
    p_score.add_argument("--sentiment-threshold", dest="sentiment_threshold", type=float)
    p_score.add_argument("--emotion-gain", dest="emotion_gain", type=float)
    p_score.add_argument("--source-ref-count", dest="source_ref_count", type=int)
    p_score.add_argument("--span-ref-days", dest="span_ref_days", type=int)
    p_score.add_argument("--burst-ref-count", dest="burst_ref_count", type=int)
    p_score.add_argument("--burst-sigma", dest="burst_sigma", type=float)
    p_score.set_defaults(func=cmd_score)

    p_fit = sub.add_parser("fit", help="run the full crowd-study analysis")
    p_fit.add_argument("annotations", help="annotation CSV file")
    p_fit.add_argument("--out-dir", "-o", required=True, help="output directory")
    p_fit.set_defaults(func=cmd_fit)

    p_ct = sub.add_parser("crowdtruth", help="aggregate annotations into agreement reports")
    p_ct.add_argument("annotations", help="annotation CSV file")
    p_ct.add_argument("--out-dir", "-o", required=True, help="output directory")
    p_ct.set_defaults(func=cmd_crowdtruth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CorpusFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except StatsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STATS
    except CapoteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
