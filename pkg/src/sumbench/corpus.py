"""Textbook corpus: parsing, validation, cleaning, profiling, splitting.

A corpus record is one textbook section paired with its expert reference
summary.  The canonical interchange format is JSONL with exactly the keys
id, unit_title, lesson_title, section_content, questions, expert_summary;
CSV with the same columns is accepted for ingestion.  An empty questions
value is canonicalized to null.
"""

from __future__ import annotations

import csv
import json
import statistics
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .errors import (
    CorpusTooSmallError,
    DuplicateIdError,
    EmptyCorpusError,
    SchemaError,
    UnknownFieldError,
)
from .rng import SplitMix64
from .textproc import _is_latin

FIELD_NAMES = ("id", "unit_title", "lesson_title", "section_content", "questions", "expert_summary")
TEXT_FIELDS = ("unit_title", "lesson_title", "section_content", "questions", "expert_summary")

ZERO_WIDTH = frozenset({"​", "‌", "‍", "﻿"})
TATWEEL = "ـ"
# \n and \t survive removal so the whitespace-collapse step can turn them
# into single spaces instead of gluing words together.
_KEPT_CONTROLS = frozenset({"\n", "\t"})

CLEANING_CLASSES = ("control", "zero_width", "tatweel")


@dataclass(frozen=True)
class CleaningConfig:
    """Removable character classes plus any extra codepoints."""

    classes: tuple[str, ...] = CLEANING_CLASSES
    extra_codepoints: tuple[str, ...] = ()

    def __post_init__(self):
        for name in self.classes:
            if name not in CLEANING_CLASSES:
                raise ValueError(f"unknown cleaning class: {name!r}")
        for cp in self.extra_codepoints:
            if len(cp) != 1:
                raise ValueError(f"extra codepoint must be a single character: {cp!r}")

    @classmethod
    def from_dict(cls, data: dict) -> "CleaningConfig":
        extras = []
        for entry in data.get("extra_codepoints", []):
            if isinstance(entry, str) and entry.upper().startswith("U+"):
                extras.append(chr(int(entry[2:], 16)))
            else:
                extras.append(entry)
        return cls(
            classes=tuple(data.get("classes", CLEANING_CLASSES)),
            extra_codepoints=tuple(extras),
        )

    @classmethod
    def load(cls, path: str | Path) -> "CleaningConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "classes": list(self.classes),
            "extra_codepoints": [f"U+{ord(c):04X}" for c in self.extra_codepoints],
        }


DEFAULT_CLEANING = CleaningConfig()


def _removal_class(ch: str, config: CleaningConfig) -> str | None:
    """Name of the class under which ``ch`` is removed, or None to keep it."""
    if ch in config.extra_codepoints:
        return "extra"
    if "tatweel" in config.classes and ch == TATWEEL:
        return "tatweel"
    if "zero_width" in config.classes and ch in ZERO_WIDTH:
        return "zero_width"
    if "control" in config.classes and ch not in _KEPT_CONTROLS:
        if unicodedata.category(ch) == "Cc":
            return "control"
    return None


def _clean_text_counting(raw: str, config: CleaningConfig) -> tuple[str, Counter]:
    removed: Counter = Counter()
    kept = []
    for ch in raw:
        cls = _removal_class(ch, config)
        if cls is None:
            kept.append(ch)
        else:
            removed[cls] += 1
    # strip + collapse every whitespace run to one space
    text = " ".join("".join(kept).split())
    text = "".join(ch.lower() if _is_latin(ch) else ch for ch in text)
    return text, removed


def clean_text(raw: str, config: CleaningConfig = DEFAULT_CLEANING) -> str:
    """Remove configured characters, unify whitespace, lowercase Latin.

    Total and idempotent: cleaning an already-clean string is a no-op.
    """
    return _clean_text_counting(raw, config)[0]


@dataclass(frozen=True)
class CorpusRecord:
    """One textbook section with its expert reference summary."""

    id: str
    unit_title: str
    lesson_title: str
    section_content: str
    questions: str | None
    expert_summary: str

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in FIELD_NAMES}


@dataclass(frozen=True)
class Provenance:
    source: str
    loaded_at: str


@dataclass(frozen=True)
class Corpus:
    records: tuple[CorpusRecord, ...]
    provenance: Provenance | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.records)

    def ids(self) -> list[str]:
        return [r.id for r in self.records]

    def by_id(self) -> dict[str, CorpusRecord]:
        return {r.id: r for r in self.records}


@dataclass(frozen=True)
class CleaningReport:
    records_in: int
    records_out: int
    records_dropped_empty: int
    chars_removed_by_class: dict[str, int]
    fields_modified: int

    def to_dict(self) -> dict:
        return {
            "records_in": self.records_in,
            "records_out": self.records_out,
            "records_dropped_empty": self.records_dropped_empty,
            "chars_removed_by_class": dict(sorted(self.chars_removed_by_class.items())),
            "fields_modified": self.fields_modified,
        }


def _record_from_mapping(mapping: dict, row: int) -> CorpusRecord:
    present = set(mapping)
    required = set(FIELD_NAMES)
    missing = sorted(required - present)
    if missing:
        raise SchemaError(f"row {row}: missing field {missing[0]!r}")
    unknown = sorted(present - required)
    if unknown:
        raise SchemaError(f"row {row}: unknown field {unknown[0]!r}")
    for name in FIELD_NAMES:
        value = mapping[name]
        if name == "questions":
            if value is not None and not isinstance(value, str):
                raise SchemaError(f"row {row}: field 'questions' must be text or null")
        elif not isinstance(value, str):
            raise SchemaError(f"row {row}: field {name!r} must be text")
    if not mapping["id"]:
        raise SchemaError(f"row {row}: field 'id' must be non-empty")
    questions = mapping["questions"] or None
    return CorpusRecord(
        id=mapping["id"],
        unit_title=mapping["unit_title"],
        lesson_title=mapping["lesson_title"],
        section_content=mapping["section_content"],
        questions=questions,
        expert_summary=mapping["expert_summary"],
    )


def _check_unique_ids(records: list[CorpusRecord]) -> None:
    seen = set()
    for rec in records:
        if rec.id in seen:
            raise DuplicateIdError(f"duplicate record id: {rec.id!r}")
        seen.add(rec.id)


def parse_corpus(path: str | Path, format: str = "jsonl") -> Corpus:
    """Load a corpus file, rejecting schema violations and duplicate ids."""
    path = Path(path)
    records: list[CorpusRecord] = []
    if format == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for row, line in enumerate(fh):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise SchemaError(f"row {row}: invalid JSON: {exc.msg}") from exc
                if not isinstance(obj, dict):
                    raise SchemaError(f"row {row}: expected a JSON object")
                records.append(_record_from_mapping(obj, row))
    elif format == "csv":
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            unknown = sorted(set(header) - set(FIELD_NAMES))
            if unknown:
                raise SchemaError(f"row 0: unknown field {unknown[0]!r}")
            missing = sorted(set(FIELD_NAMES) - set(header))
            if missing:
                raise SchemaError(f"row 0: missing field {missing[0]!r}")
            for row, mapping in enumerate(reader, start=1):
                if any(v is None for v in mapping.values()):
                    raise SchemaError(f"row {row}: short row")
                records.append(_record_from_mapping(mapping, row))
    else:
        raise ValueError(f"unsupported corpus format: {format!r}")
    _check_unique_ids(records)
    loaded_at = datetime.now(timezone.utc).isoformat()
    return Corpus(records=tuple(records), provenance=Provenance(str(path), loaded_at))


def serialize_corpus(corpus: Corpus, path: str | Path, format: str = "jsonl") -> None:
    """Write a corpus back out; parse_corpus of the result is the identity."""
    path = Path(path)
    if format == "jsonl":
        with open(path, "w", encoding="utf-8") as fh:
            for rec in corpus.records:
                fh.write(json.dumps(rec.to_dict(), ensure_ascii=False))
                fh.write("\n")
    elif format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(FIELD_NAMES)
            for rec in corpus.records:
                row = [getattr(rec, name) for name in FIELD_NAMES]
                writer.writerow(["" if v is None else v for v in row])
    else:
        raise ValueError(f"unsupported corpus format: {format!r}")


def clean_corpus(
    corpus: Corpus, config: CleaningConfig = DEFAULT_CLEANING
) -> tuple[Corpus, CleaningReport]:
    """Clean every text field, dropping records left without content.

    A record is dropped when its cleaned section_content or expert_summary
    is empty.  Modified-field and removed-character counts cover all input
    records, dropped ones included.
    """
    removed: Counter = Counter()
    fields_modified = 0
    kept: list[CorpusRecord] = []
    dropped = 0
    for rec in corpus.records:
        cleaned = {}
        for name in FIELD_NAMES:
            value = getattr(rec, name)
            if value is None:
                cleaned[name] = None
                continue
            new_value, rec_removed = _clean_text_counting(value, config)
            removed.update(rec_removed)
            if new_value != value:
                fields_modified += 1
            cleaned[name] = new_value
        if not cleaned["id"]:
            raise SchemaError(f"record {rec.id!r}: id empty after cleaning")
        if not cleaned["section_content"] or not cleaned["expert_summary"]:
            dropped += 1
            continue
        if not cleaned["questions"]:
            cleaned["questions"] = None
        kept.append(CorpusRecord(**cleaned))
    if not kept:
        raise EmptyCorpusError("cleaning dropped every record")
    _check_unique_ids(kept)
    report = CleaningReport(
        records_in=len(corpus.records),
        records_out=len(kept),
        records_dropped_empty=dropped,
        chars_removed_by_class=dict(removed),
        fields_modified=fields_modified,
    )
    return Corpus(records=tuple(kept), provenance=corpus.provenance), report


@dataclass(frozen=True)
class LengthProfile:
    """Word counts of one field across the corpus, with a sparse histogram."""

    field: str
    bucket_width: int
    counts: dict[str, int]  # record id -> word count, input order
    buckets: list[tuple[int, int, int]]  # (lo, hi, n) for non-empty buckets
    min: int
    max: int
    mean: float
    median: float

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "bucket_width": self.bucket_width,
            "counts": self.counts,
            "buckets": [{"lo": lo, "hi": hi, "count": n} for lo, hi, n in self.buckets],
            "min": self.min,
            "max": self.max,
            "mean": self.mean,
            "median": self.median,
        }


def length_profile(corpus: Corpus, field_name: str, bucket_width: int = 100) -> LengthProfile:
    """Whitespace-word counts for one text field, bucketed deterministically."""
    if field_name not in TEXT_FIELDS:
        raise UnknownFieldError(f"not a text field: {field_name!r}")
    if bucket_width < 1:
        raise ValueError("bucket_width must be a positive integer")
    if not corpus.records:
        raise EmptyCorpusError("cannot profile an empty corpus")
    counts = {}
    for rec in corpus.records:
        value = getattr(rec, field_name) or ""
        counts[rec.id] = len(value.split())
    histogram: Counter = Counter(c // bucket_width for c in counts.values())
    buckets = [
        (i * bucket_width, (i + 1) * bucket_width, n) for i, n in sorted(histogram.items())
    ]
    values = list(counts.values())
    return LengthProfile(
        field=field_name,
        bucket_width=bucket_width,
        counts=counts,
        buckets=buckets,
        min=min(values),
        max=max(values),
        mean=statistics.fmean(values),
        median=float(statistics.median(values)),
    )


def render_histogram(profile: LengthProfile, width: int = 50) -> str:
    """Plain-text histogram for terminal display."""
    peak = max(n for _, _, n in profile.buckets)
    lines = [f"word counts of {profile.field} (n={len(profile.counts)})"]
    for lo, hi, n in profile.buckets:
        bar = "#" * max(1, round(n / peak * width))
        lines.append(f"[{lo:>6},{hi:>6}) {n:>5} {bar}")
    lines.append(
        f"min {profile.min}  max {profile.max}  "
        f"mean {profile.mean:.1f}  median {profile.median:.1f}"
    )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SplitAssignment:
    """Seeded train/validation/test partition of the corpus ids."""

    seed: int
    train_ids: tuple[str, ...]
    validation_ids: tuple[str, ...]
    test_ids: tuple[str, ...]

    def subset(self, which: str) -> tuple[str, ...]:
        try:
            return {
                "train": self.train_ids,
                "validation": self.validation_ids,
                "test": self.test_ids,
            }[which]
        except KeyError:
            raise ValueError(f"unknown subset: {which!r}") from None

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "train": list(self.train_ids),
            "validation": list(self.validation_ids),
            "test": list(self.test_ids),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SplitAssignment":
        return cls(
            seed=int(data["seed"]),
            train_ids=tuple(data["train"]),
            validation_ids=tuple(data["validation"]),
            test_ids=tuple(data["test"]),
        )

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, ensure_ascii=False, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "SplitAssignment":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def split_sizes(n: int) -> tuple[int, int, int]:
    """(train, validation, test) sizes: floor(0.7*n), then ceil/floor halves."""
    train = (7 * n) // 10
    rest = n - train
    validation = (rest + 1) // 2
    test = rest // 2
    return train, validation, test


def split_corpus(corpus: Corpus, seed: int) -> SplitAssignment:
    """Deterministic seeded 70/15/15 split (see rng module for the PRNG)."""
    n = len(corpus.records)
    if n < 3:
        raise CorpusTooSmallError(f"need at least 3 records to split, have {n}")
    ids = corpus.ids()
    SplitMix64(seed).shuffle(ids)
    n_train, n_val, _ = split_sizes(n)
    return SplitAssignment(
        seed=seed,
        train_ids=tuple(ids[:n_train]),
        validation_ids=tuple(ids[n_train : n_train + n_val]),
        test_ids=tuple(ids[n_train + n_val :]),
    )
