"""Command-line entry point for the summarization evaluation pipeline.

Subcommands follow the pipeline order: validate, clean, stats, split,
baseline, rouge, compare, serve, expert-report.  Every file-writing run
drops a ``<subcommand>.manifest.json`` next to its outputs recording the
resolved parameters, so any result can be reproduced byte-for-byte.
Exit codes: 0 success, 1 validation/processing failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .baseline import ExtractiveConfig, make_baseline_candidates
from .candidates import align, parse_candidates, serialize_candidates
from .corpus import (
    CleaningConfig,
    SplitAssignment,
    clean_corpus,
    length_profile,
    parse_corpus,
    render_histogram,
    serialize_corpus,
    split_corpus,
)
from .errors import MissingCandidateError, SumbenchError
from .rater import RatingSession, RatingStore, aggregate, create_session
from .report import (
    build_comparison,
    build_expert_table,
    build_rouge_table,
    render,
)
from .rouge import score_set
from .textproc import PROFILES, NormalizationConfig

SUBSETS = ("train", "validation", "test")


def _resolve_profile(name_or_path: str) -> NormalizationConfig:
    """A named profile, or a path to a NormalizationConfig JSON file."""
    if name_or_path in PROFILES:
        return PROFILES[name_or_path]
    path = Path(name_or_path)
    if path.exists():
        with open(path, encoding="utf-8") as fh:
            return NormalizationConfig.from_dict(json.load(fh))
    raise ValueError(f"unknown profile {name_or_path!r} (names: {', '.join(sorted(PROFILES))})")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_manifest(out: Path, subcommand: str, args, outputs: list[Path]) -> None:
    config = {
        k: v for k, v in sorted(vars(args).items()) if k not in {"func", "out"} and v is not None
    }
    manifest = {
        "subcommand": subcommand,
        "config": {k: str(v) if isinstance(v, Path) else v for k, v in config.items()},
        "outputs": [p.name for p in outputs],
        "seed": getattr(args, "seed", None),
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    path = out / f"{subcommand}.manifest.json"
    path.write_text(json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def cmd_validate(args) -> int:
    corpus = parse_corpus(args.corpus, args.format)
    print(f"ok: {len(corpus)} records, ids unique, schema valid")
    return 0


def cmd_clean(args) -> int:
    corpus = parse_corpus(args.corpus, args.format)
    config = CleaningConfig.load(args.config) if args.config else CleaningConfig()
    cleaned, report = clean_corpus(corpus, config)
    out = _out_dir(args)
    corpus_path = out / "corpus.clean.jsonl"
    serialize_corpus(cleaned, corpus_path, "jsonl")
    report_path = out / "cleaning_report.json"
    report_path.write_text(
        json.dumps(report.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
    )
    _write_manifest(out, "clean", args, [corpus_path, report_path])
    print(f"cleaned: {report.records_out} kept, {report.records_dropped_empty} dropped")
    return 0


def cmd_stats(args) -> int:
    corpus = parse_corpus(args.corpus, args.format)
    profile = length_profile(corpus, args.field, args.bucket_width)
    profile_json = json.dumps(profile.to_dict(), ensure_ascii=False, indent=2) + "\n"
    histogram = render_histogram(profile)
    if args.out:
        out = _out_dir(args)
        json_path = out / "profile.json"
        json_path.write_text(profile_json, encoding="utf-8")
        text_path = out / "profile.txt"
        text_path.write_text(histogram, encoding="utf-8")
        _write_manifest(out, "stats", args, [json_path, text_path])
    else:
        sys.stdout.write(profile_json)
        sys.stdout.write(histogram)
    return 0


def cmd_split(args) -> int:
    corpus = parse_corpus(args.corpus, args.format)
    assignment = split_corpus(corpus, args.seed)
    out = _out_dir(args)
    split_path = out / "split.json"
    assignment.save(split_path)
    _write_manifest(out, "split", args, [split_path])
    sizes = (len(assignment.train_ids), len(assignment.validation_ids), len(assignment.test_ids))
    print(f"split: train/validation/test = {sizes[0]}/{sizes[1]}/{sizes[2]}")
    return 0


def cmd_baseline(args) -> int:
    corpus = parse_corpus(args.corpus, args.format)
    config = ExtractiveConfig(
        word_budget=args.budget,
        min_sentence_words=args.min_sentence_words,
        normalization=_resolve_profile(args.profile),
    )
    candidates = make_baseline_candidates(corpus, config)
    out = _out_dir(args)
    cand_path = out / "baseline.jsonl"
    serialize_candidates(candidates, cand_path)
    _write_manifest(out, "baseline", args, [cand_path])
    print(f"baseline: {len(candidates.summaries)} summaries")
    return 0


def cmd_rouge(args) -> int:
    corpus = parse_corpus(args.corpus, args.format)
    split = SplitAssignment.load(args.split)
    ids = split.subset(args.subset)
    profile = _resolve_profile(args.profile)
    summaries = []
    for cand_path in args.candidates:
        candidate_set = parse_candidates(cand_path)
        report = align(candidate_set, split, args.subset)
        if not report.ok and not args.force:
            raise MissingCandidateError(report.missing_ids)
        summaries.append(
            score_set(
                corpus,
                candidate_set,
                ids,
                profile,
                subset=args.subset,
                seed=split.seed,
                force=args.force,
            )
        )
    table = build_rouge_table(summaries)
    out = _out_dir(args)
    outputs = []
    for fmt, suffix in (("json", "json"), ("csv", "csv"), ("markdown", "md")):
        path = out / f"report.rouge.{suffix}"
        path.write_bytes(render(table, fmt))
        outputs.append(path)
    details_path = out / "report.rouge.details.json"
    details_path.write_text(
        json.dumps({"summaries": [s.to_dict() for s in summaries]}, ensure_ascii=False, indent=2)
        + "\n",
        encoding="utf-8",
    )
    outputs.append(details_path)
    _write_manifest(out, "rouge", args, outputs)
    for row in table.rows:
        print(f"{row.model_name}: rouge1 {row.rouge1:.4f} rouge2 {row.rouge2:.4f} rougeL {row.rougeL:.4f}")
    return 0


def cmd_compare(args) -> int:
    corpus = parse_corpus(args.corpus, args.format)
    sets = [parse_candidates(p) for p in args.candidates]
    sheet = build_comparison(corpus, sets, args.id)
    rendered = render(sheet, "markdown")
    if args.out:
        out = _out_dir(args)
        path = out / f"comparison.{args.id}.md"
        path.write_bytes(rendered)
        _write_manifest(out, "compare", args, [path])
    else:
        sys.stdout.write(rendered.decode("utf-8"))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    manifest_path = Path(args.session_manifest)
    if manifest_path.exists():
        session = RatingSession.load(manifest_path)
    else:
        if not args.split or not args.candidates:
            raise ValueError("starting a new session needs --split and --candidates")
        corpus = parse_corpus(args.corpus, args.format)
        candidate_sets = [parse_candidates(p) for p in args.candidates]
        split = SplitAssignment.load(args.split)
        session = create_session(
            corpus, candidate_sets, split.subset(args.subset), args.seed, force=args.force
        )
        session.save(manifest_path)
    store = RatingStore(args.ratings_log, session.resolution)
    app = create_app(
        session, store, static_dir=args.static_dir, allow_aggregate=args.admin
    )
    print(f"serving {len(session.tasks)} tasks on 127.0.0.1:{args.port}")
    uvicorn.run(app, host="127.0.0.1", port=args.port, log_level="warning")
    return 0


def cmd_expert_report(args) -> int:
    session = RatingSession.load(args.session_manifest)
    store = RatingStore(args.ratings_log, session.resolution)
    aggregates = aggregate(store)
    table = build_expert_table([(a.model_name, a.mean, a.count) for a in aggregates])
    out = _out_dir(args)
    outputs = []
    for fmt, suffix in (("json", "json"), ("csv", "csv"), ("markdown", "md")):
        path = out / f"report.expert.{suffix}"
        path.write_bytes(render(table, fmt))
        outputs.append(path)
    _write_manifest(out, "expert-report", args, outputs)
    for row in table.rows:
        print(f"{row.model_name}: {row.mean_rating:.3f} ({row.rating_count} ratings)")
    return 0


def _add_corpus_arg(parser) -> None:
    parser.add_argument("--corpus", required=True, help="corpus file (JSONL or CSV)")
    parser.add_argument(
        "--format", choices=("jsonl", "csv"), default="jsonl", help="corpus file format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumbench",
        description="Summarization evaluation workbench: corpus pipeline, "
        "ROUGE scoring, extractive baseline, blind expert rating, reports.",
    )
    parser.add_argument("--version", action="version", version=f"sumbench {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", help="parse a corpus and check its schema")
    _add_corpus_arg(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("clean", help="clean the corpus and report what changed")
    _add_corpus_arg(p)
    p.add_argument("--config", help="cleaning config JSON (removable classes)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("stats", help="word-count profile of a text field")
    _add_corpus_arg(p)
    p.add_argument("--field", default="section_content", help="field to profile")
    p.add_argument("--bucket-width", type=int, default=100, help="histogram bucket width")
    p.add_argument("--out", help="output directory (default: print to stdout)")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("split", help="seeded train/validation/test split")
    _add_corpus_arg(p)
    p.add_argument("--seed", type=int, required=True, help="shuffle seed")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("baseline", help="extractive baseline candidate summaries")
    _add_corpus_arg(p)
    p.add_argument("--budget", type=int, default=256, help="summary word budget")
    p.add_argument("--min-sentence-words", type=int, default=1, help="shorter sentences score 0")
    p.add_argument("--profile", default="paper-default", help="normalization profile name or file")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("rouge", help="score candidate sets on a split subset")
    _add_corpus_arg(p)
    p.add_argument(
        "--candidates", action="append", required=True, help="candidate JSONL (repeatable)"
    )
    p.add_argument("--split", required=True, help="split assignment JSON")
    p.add_argument("--subset", choices=SUBSETS, default="test", help="subset to score")
    p.add_argument("--profile", default="paper-default", help="normalization profile name or file")
    p.add_argument("--force", action="store_true", help="score even with missing candidates")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_rouge)

    p = sub.add_parser("compare", help="side-by-side sheet for one record")
    _add_corpus_arg(p)
    p.add_argument("--candidates", action="append", default=[], help="candidate JSONL (repeatable)")
    p.add_argument("--id", required=True, help="record id")
    p.add_argument("--out", help="output directory (default: print to stdout)")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("serve", help="run the blind rating service")
    _add_corpus_arg(p)
    p.add_argument("--candidates", action="append", default=[], help="candidate JSONL (repeatable)")
    p.add_argument("--split", help="split assignment JSON")
    p.add_argument("--subset", choices=SUBSETS, default="test", help="subset to rate")
    p.add_argument("--seed", type=int, default=0, help="session shuffle seed")
    p.add_argument("--force", action="store_true", help="allow missing candidates")
    p.add_argument(
        "--port", type=int, default=int(os.environ.get("SUMBENCH_PORT", "8777")),
        help="listen port (env SUMBENCH_PORT)",
    )
    p.add_argument(
        "--ratings-log",
        default=os.environ.get("SUMBENCH_RATINGS_LOG", "ratings.jsonl"),
        help="append-only rating log path (env SUMBENCH_RATINGS_LOG)",
    )
    p.add_argument(
        "--session-manifest",
        default=os.environ.get("SUMBENCH_SESSION_MANIFEST", "session.json"),
        help="session manifest path; reused if it exists (env SUMBENCH_SESSION_MANIFEST)",
    )
    p.add_argument(
        "--static-dir",
        default=os.environ.get("SUMBENCH_STATIC_DIR"),
        help="directory of rater UI assets to serve at / (env SUMBENCH_STATIC_DIR)",
    )
    p.add_argument("--admin", action="store_true", help="expose /api/aggregate")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("expert-report", help="aggregate a ratings log into tables")
    p.add_argument("--ratings-log", required=True, help="append-only rating log")
    p.add_argument("--session-manifest", required=True, help="session manifest JSON")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_expert_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SumbenchError, OSError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
