"""Command-line entry point for the candidate generator."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import CHECKPOINTS, AdapterConfig
from .generate import generate_candidates


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumbench-adapter",
        description="Run a seq2seq checkpoint over a split subset and emit a "
        "candidate JSONL in the workbench wire format.",
    )
    parser.add_argument("--corpus", required=True, help="corpus JSONL file")
    parser.add_argument("--split", required=True, help="split assignment JSON")
    parser.add_argument("--subset", default="test", choices=("train", "validation", "test"))
    parser.add_argument("--checkpoint", default="AraBART", choices=sorted(CHECKPOINTS))
    parser.add_argument("--out", required=True, help="candidate JSONL output path")
    parser.add_argument("--loss-log", help="per-epoch loss sidecar (default: <out>.loss.jsonl)")
    parser.add_argument(
        "--dry-run",
        action="store_true",
        help="emit each record's first sentence instead of running the model",
    )
    parser.add_argument("--epochs", type=int, default=10)
    parser.add_argument("--learning-rate", type=float, default=5e-5)
    parser.add_argument("--weight-decay", type=float, default=0.01)
    parser.add_argument("--batch-size", type=int, default=4)
    parser.add_argument("--max-input-tokens", type=int, default=1024)
    parser.add_argument("--max-summary-tokens", type=int, default=256)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--num-beams", type=int, default=4)
    parser.add_argument("--length-penalty", type=float, default=1.0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = AdapterConfig(
        checkpoint=args.checkpoint,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        weight_decay=args.weight_decay,
        batch_size=args.batch_size,
        max_input_tokens=args.max_input_tokens,
        max_summary_tokens=args.max_summary_tokens,
        seed=args.seed,
        num_beams=args.num_beams,
        length_penalty=args.length_penalty,
    )
    loss_log = args.loss_log or f"{args.out}.loss.jsonl"
    try:
        count = generate_candidates(
            args.corpus, args.split, args.subset, config, args.out, loss_log, dry_run=args.dry_run
        )
    except (OSError, ValueError, ImportError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    mode = "dry-run" if args.dry_run else config.checkpoint_id
    print(f"wrote {count} summaries to {args.out} ({mode})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
