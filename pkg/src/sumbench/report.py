"""Score tables, expert-rating tables, side-by-side comparison sheets.

Each table renders to JSON, CSV, and Markdown with byte-deterministic
output.  Markdown column headers mirror the shapes the scores are usually
read in; JSON carries full-precision values plus 4-decimal display fields
and enough provenance (profile, split seed, aggregation, record count) to
recompute the table.  CSV is UTF-8, comma-delimited, minimally quoted,
LF-terminated, with provenance in trailing ``#`` comment lines.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .candidates import CandidateSet
from .corpus import Corpus
from .errors import EmptyInputError, MixedProvenanceError, UnknownIdError
from .rouge import CorpusRougeSummary
from .textproc import NormalizationConfig

ROUGE_COLUMNS = ("rouge1", "rouge2", "rougeL")
EXPERT_RATING_HEADER = "Rating (0 \u2013 10)"
ABSENT_MARKER = "(absent)"


@dataclass(frozen=True)
class RougeRow:
    model_name: str
    rouge1: float
    rouge2: float
    rougeL: float


@dataclass(frozen=True)
class RougeTable:
    """Rows of per-model macro recall, sorted by rouge1 descending."""

    rows: tuple[RougeRow, ...]
    profile: NormalizationConfig
    subset: str | None
    seed: int | None
    record_count: int
    aggregation: str = "macro-recall"

    def provenance(self) -> dict:
        return {
            "profile": self.profile.to_dict(),
            "subset": self.subset,
            "seed": self.seed,
            "record_count": self.record_count,
            "aggregation": self.aggregation,
        }


def build_rouge_table(summaries: list[CorpusRougeSummary]) -> RougeTable:
    """Assemble the per-model score table from same-provenance summaries."""
    if not summaries:
        raise EmptyInputError("no summaries to tabulate")
    first = summaries[0]
    for summary in summaries[1:]:
        if summary.profile != first.profile:
            raise MixedProvenanceError(
                f"{summary.model_name!r} was scored under a different normalization profile"
            )
        if (summary.subset, summary.seed, summary.record_count) != (
            first.subset,
            first.seed,
            first.record_count,
        ):
            raise MixedProvenanceError(
                f"{summary.model_name!r} was scored on a different split"
            )
    rows = [
        RougeRow(
            model_name=s.model_name,
            rouge1=s.variants["rouge1"]["recall"],
            rouge2=s.variants["rouge2"]["recall"],
            rougeL=s.variants["rougeL"]["recall"],
        )
        for s in summaries
    ]
    rows.sort(key=lambda r: (-r.rouge1, r.model_name))
    return RougeTable(
        rows=tuple(rows),
        profile=first.profile,
        subset=first.subset,
        seed=first.seed,
        record_count=first.record_count,
    )


@dataclass(frozen=True)
class ExpertRow:
    model_name: str
    mean_rating: float
    rating_count: int


@dataclass(frozen=True)
class ExpertTable:
    """Per-model mean expert ratings, sorted by mean descending."""

    rows: tuple[ExpertRow, ...]


def build_expert_table(aggregates: list[tuple[str, float, int]]) -> ExpertTable:
    if not aggregates:
        raise EmptyInputError("no expert aggregates to tabulate")
    rows = []
    for model_name, mean, count in aggregates:
        if count < 1:
            raise EmptyInputError(f"{model_name!r} has no ratings")
        if not 1 <= mean <= 10:
            raise ValueError(f"{model_name!r}: mean rating {mean} outside [1, 10]")
        rows.append(ExpertRow(model_name=model_name, mean_rating=mean, rating_count=count))
    rows.sort(key=lambda r: (-r.mean_rating, r.model_name))
    return ExpertTable(rows=tuple(rows))


@dataclass(frozen=True)
class ComparisonSheet:
    """Original text, expert summary, and each model's candidate for one record."""

    record_id: str
    original_text: str
    expert_summary: str
    candidates: tuple[tuple[str, str | None], ...]  # (model name, summary or None)


def build_comparison(
    corpus: Corpus, candidate_sets: list[CandidateSet], record_id: str
) -> ComparisonSheet:
    record = corpus.by_id().get(record_id)
    if record is None:
        raise UnknownIdError(f"record id not in corpus: {record_id!r}")
    return ComparisonSheet(
        record_id=record_id,
        original_text=record.section_content,
        expert_summary=record.expert_summary,
        candidates=tuple(
            (cs.model_name, cs.summaries.get(record_id)) for cs in candidate_sets
        ),
    )


def _md_cell(text: str) -> str:
    return text.replace("|", "\\|").replace("\n", "<br>")


def _md_table(headers: tuple[str, ...], rows: list[tuple[str, ...]]) -> list[str]:
    lines = [
        "| " + " | ".join(headers) + " |",
        "| " + " | ".join("---" for _ in headers) + " |",
    ]
    lines.extend("| " + " | ".join(_md_cell(c) for c in row) + " |" for row in rows)
    return lines


def _csv_bytes(header: tuple[str, ...], rows: list[tuple[str, ...]], comments: list[str]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    for comment in comments:
        buf.write(f"# {comment}\n")
    return buf.getvalue().encode("utf-8")


def _json_bytes(payload: dict) -> bytes:
    return (json.dumps(payload, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def _provenance_comment(table: RougeTable) -> str:
    return "provenance: " + json.dumps(table.provenance(), ensure_ascii=False)


def _render_rouge(table: RougeTable, format: str) -> bytes:
    display = [
        (r.model_name, f"{r.rouge1:.4f}", f"{r.rouge2:.4f}", f"{r.rougeL:.4f}")
        for r in table.rows
    ]
    if format == "json":
        return _json_bytes(
            {
                "table": "rouge",
                "rows": [
                    {
                        "model": r.model_name,
                        "rouge1": r.rouge1,
                        "rouge2": r.rouge2,
                        "rougeL": r.rougeL,
                        "display": {
                            "rouge1": f"{r.rouge1:.4f}",
                            "rouge2": f"{r.rouge2:.4f}",
                            "rougeL": f"{r.rougeL:.4f}",
                        },
                    }
                    for r in table.rows
                ],
                "provenance": table.provenance(),
            }
        )
    if format == "csv":
        return _csv_bytes(("model",) + ROUGE_COLUMNS, display, [_provenance_comment(table)])
    if format == "markdown":
        lines = _md_table(("Model",) + ROUGE_COLUMNS, display)
        lines += ["", f"_{_provenance_comment(table)}_"]
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unsupported format: {format!r}")


def _render_expert(table: ExpertTable, format: str) -> bytes:
    if format == "json":
        return _json_bytes(
            {
                "table": "expert",
                "rows": [
                    {
                        "model": r.model_name,
                        "mean_rating": r.mean_rating,
                        "rating_count": r.rating_count,
                        "display": {"mean_rating": f"{r.mean_rating:.3f}"},
                    }
                    for r in table.rows
                ],
                "provenance": {"scale": "integers 1-10", "aggregation": "mean"},
            }
        )
    if format == "csv":
        rows = [
            (r.model_name, f"{r.mean_rating:.3f}", str(r.rating_count)) for r in table.rows
        ]
        comments = ["provenance: scale integers 1-10, aggregation mean"]
        return _csv_bytes(("model", "mean_rating", "rating_count"), rows, comments)
    if format == "markdown":
        rows = [(r.model_name, f"{r.mean_rating:.3f}") for r in table.rows]
        lines = _md_table(("Model", EXPERT_RATING_HEADER), rows)
        total = sum(r.rating_count for r in table.rows)
        lines += ["", f"_provenance: scale integers 1-10, aggregation mean, {total} ratings_"]
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unsupported format: {format!r}")


def _render_comparison(sheet: ComparisonSheet, format: str) -> bytes:
    rows = [("Original text", sheet.original_text), ("Expert", sheet.expert_summary)]
    rows += [
        (model, ABSENT_MARKER if summary is None else summary)
        for model, summary in sheet.candidates
    ]
    if format == "json":
        return _json_bytes(
            {
                "table": "comparison",
                "record_id": sheet.record_id,
                "rows": [{"model": m, "summary": s} for m, s in rows],
            }
        )
    if format == "csv":
        return _csv_bytes(("model", "summary"), rows, [f"record: {sheet.record_id}"])
    if format == "markdown":
        lines = [f"## Record {sheet.record_id}", ""]
        lines += _md_table(("Model", "Summary"), rows)
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unsupported format: {format!r}")


def render(table: RougeTable | ExpertTable | ComparisonSheet, format: str) -> bytes:
    """Deterministic bytes for a table in json, csv, or markdown."""
    if isinstance(table, RougeTable):
        return _render_rouge(table, format)
    if isinstance(table, ExpertTable):
        return _render_expert(table, format)
    if isinstance(table, ComparisonSheet):
        return _render_comparison(table, format)
    raise TypeError(f"cannot render {type(table).__name__}")
