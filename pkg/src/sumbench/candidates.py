"""Model-generated candidate summaries and their training metadata.

Wire format is JSONL: the first line is a header object carrying
``model_name`` and an optional ``model_card``; every following line is
``{"id": ..., "summary": ...}``.  Empty summaries are legal and kept --
they score zero under the degenerate policy instead of aborting a run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import SplitAssignment
from .errors import DuplicateIdError, MissingModelNameError, SchemaError

CARD_FIELDS = (
    "checkpoint",
    "epochs",
    "learning_rate",
    "weight_decay",
    "batch_size",
    "optimizer",
    "max_input_tokens",
    "max_summary_tokens",
)
_CARD_NUMERIC = (
    "epochs",
    "learning_rate",
    "weight_decay",
    "batch_size",
    "max_input_tokens",
    "max_summary_tokens",
)


@dataclass(frozen=True)
class ModelCard:
    """Training hyperparameters recorded verbatim, never used by scoring."""

    checkpoint: str | None = None
    epochs: int | None = None
    learning_rate: float | None = None
    weight_decay: float | None = None
    batch_size: int | None = None
    optimizer: str | None = None
    max_input_tokens: int | None = None
    max_summary_tokens: int | None = None

    def __post_init__(self):
        for name in _CARD_NUMERIC:
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise SchemaError(f"model card field {name!r} must be positive")

    def to_dict(self) -> dict:
        return {k: v for k in CARD_FIELDS if (v := getattr(self, k)) is not None}

    @classmethod
    def from_dict(cls, data: dict) -> "ModelCard":
        unknown = sorted(set(data) - set(CARD_FIELDS))
        if unknown:
            raise SchemaError(f"model card: unknown field {unknown[0]!r}")
        return cls(**data)


@dataclass(frozen=True)
class CandidateSet:
    """One model's generated summaries keyed by record id."""

    model_name: str
    summaries: dict[str, str] = field(default_factory=dict)
    model_card: ModelCard | None = None

    def __post_init__(self):
        if not self.model_name:
            raise MissingModelNameError("candidate set has no model name")


def parse_candidates(path: str | Path) -> CandidateSet:
    """Load a candidate JSONL file (header line, then one summary per line)."""
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        lines = [(row, line) for row, line in enumerate(fh) if line.strip()]
    if not lines:
        raise MissingModelNameError(f"{path}: empty candidate file")

    def parse_line(row: int, line: str) -> dict:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"row {row}: invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise SchemaError(f"row {row}: expected a JSON object")
        return obj

    head_row, head_line = lines[0]
    header = parse_line(head_row, head_line)
    unknown = sorted(set(header) - {"model_name", "model_card"})
    if unknown:
        if "id" in header or "summary" in header:
            raise MissingModelNameError(f"row {head_row}: header line missing")
        raise SchemaError(f"row {head_row}: unknown header field {unknown[0]!r}")
    model_name = header.get("model_name")
    if not model_name or not isinstance(model_name, str):
        raise MissingModelNameError(f"row {head_row}: header carries no model_name")
    card = None
    if header.get("model_card") is not None:
        if not isinstance(header["model_card"], dict):
            raise SchemaError(f"row {head_row}: model_card must be an object")
        card = ModelCard.from_dict(header["model_card"])

    summaries: dict[str, str] = {}
    for row, line in lines[1:]:
        obj = parse_line(row, line)
        if set(obj) != {"id", "summary"}:
            bad = sorted(set(obj) ^ {"id", "summary"})
            raise SchemaError(f"row {row}: expected exactly id and summary, got {bad}")
        if not isinstance(obj["id"], str) or not obj["id"]:
            raise SchemaError(f"row {row}: field 'id' must be non-empty text")
        if not isinstance(obj["summary"], str):
            raise SchemaError(f"row {row}: field 'summary' must be text")
        if obj["id"] in summaries:
            raise DuplicateIdError(f"row {row}: duplicate candidate id {obj['id']!r}")
        summaries[obj["id"]] = obj["summary"]
    return CandidateSet(model_name=model_name, summaries=summaries, model_card=card)


def serialize_candidates(candidates: CandidateSet, path: str | Path) -> None:
    header: dict = {"model_name": candidates.model_name}
    if candidates.model_card is not None:
        header["model_card"] = candidates.model_card.to_dict()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, ensure_ascii=False) + "\n")
        for record_id, summary in candidates.summaries.items():
            fh.write(json.dumps({"id": record_id, "summary": summary}, ensure_ascii=False) + "\n")


@dataclass(frozen=True)
class AlignmentReport:
    """Set arithmetic between a split subset and a candidate set."""

    matched_ids: tuple[str, ...]
    missing_ids: tuple[str, ...]  # in the split subset but not in candidates
    extra_ids: tuple[str, ...]  # in candidates but not in the split subset

    @property
    def ok(self) -> bool:
        return not self.missing_ids

    def to_dict(self) -> dict:
        return {
            "matched_ids": list(self.matched_ids),
            "missing_ids": list(self.missing_ids),
            "extra_ids": list(self.extra_ids),
        }


def align(candidates: CandidateSet, split: SplitAssignment, which: str) -> AlignmentReport:
    """Compare candidate coverage against one split subset."""
    subset = set(split.subset(which))
    have = set(candidates.summaries)
    return AlignmentReport(
        matched_ids=tuple(sorted(subset & have)),
        missing_ids=tuple(sorted(subset - have)),
        extra_ids=tuple(sorted(have - subset)),
    )
