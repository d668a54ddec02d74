"""Blind expert-rating sessions: task creation, durable storage, aggregation.

Raters see each candidate summary under an anonymized "System X" label;
the label-to-model mapping is drawn per record so a label never means the
same model twice in a row.  The task-to-model resolution map lives only in
the server-side session manifest, and ratings append to a JSONL log that
can be replayed to reproduce every aggregate exactly.
"""

from __future__ import annotations

import hashlib
import json
import os
import string
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .candidates import CandidateSet
from .corpus import Corpus
from .errors import (
    DuplicateRatingError,
    EmptyStoreError,
    MissingCandidateError,
    MissingRecordError,
    OutOfRangeError,
    UnknownTaskError,
)
from .rng import SplitMix64

CRITERIA = ("coherence", "informativeness", "relevance")


@dataclass(frozen=True)
class RatingTask:
    """One blind judgment unit: a record paired with one anonymized candidate."""

    task_id: str
    record_id: str
    original_text: str
    expert_summary: str
    candidate_text: str
    blind_label: str

    def to_payload(self) -> dict:
        """The client-visible fields; never includes the true model name."""
        return {
            "task_id": self.task_id,
            "record_id": self.record_id,
            "original_text": self.original_text,
            "expert_summary": self.expert_summary,
            "candidate_text": self.candidate_text,
            "blind_label": self.blind_label,
        }


@dataclass(frozen=True)
class RatingSession:
    seed: int
    tasks: tuple[RatingTask, ...]
    resolution: dict[str, str]  # task_id -> true model name, server-side only

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "tasks": [t.to_payload() for t in self.tasks],
            "resolution": self.resolution,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RatingSession":
        return cls(
            seed=int(data["seed"]),
            tasks=tuple(RatingTask(**t) for t in data["tasks"]),
            resolution=dict(data["resolution"]),
        )

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, ensure_ascii=False, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path: str | Path) -> "RatingSession":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def _task_id(seed: int, record_id: str, model_name: str) -> str:
    # Deterministic for a fixed seed yet 128-bit unguessable without it.
    digest = hashlib.sha256(f"{seed}|{record_id}|{model_name}".encode("utf-8"))
    return digest.hexdigest()[:32]


def create_session(
    corpus: Corpus,
    candidate_sets: list[CandidateSet],
    ids: set[str] | list[str],
    seed: int,
    force: bool = False,
) -> RatingSession:
    """One task per (record, model), blinded and shuffled deterministically."""
    wanted = sorted(ids)
    records = corpus.by_id()
    missing_records = [i for i in wanted if i not in records]
    if missing_records:
        raise MissingRecordError(missing_records)
    if not force:
        for cs in candidate_sets:
            missing = [i for i in wanted if i not in cs.summaries]
            if missing:
                raise MissingCandidateError(missing)
    labels = [f"System {letter}" for letter in string.ascii_uppercase[: len(candidate_sets)]]
    for cs in candidate_sets:
        if any(cs.model_name in label for label in labels):
            raise ValueError(f"model name {cs.model_name!r} collides with a blind label")
    rng = SplitMix64(seed)
    tasks = []
    resolution: dict[str, str] = {}
    for record_id in wanted:
        record = records[record_id]
        order = list(range(len(candidate_sets)))
        rng.shuffle(order)
        for label_index, set_index in enumerate(order):
            cs = candidate_sets[set_index]
            if record_id not in cs.summaries:
                continue  # force mode: skip absent candidates
            task_id = _task_id(seed, record_id, cs.model_name)
            tasks.append(
                RatingTask(
                    task_id=task_id,
                    record_id=record_id,
                    original_text=record.section_content,
                    expert_summary=record.expert_summary,
                    candidate_text=cs.summaries[record_id],
                    blind_label=labels[label_index],
                )
            )
            resolution[task_id] = cs.model_name
    rng.shuffle(tasks)
    return RatingSession(seed=seed, tasks=tuple(tasks), resolution=resolution)


@dataclass(frozen=True)
class Rating:
    task_id: str
    overall: int
    rater_id: str
    timestamp: str = ""
    criteria: dict[str, int] | None = None

    def to_dict(self) -> dict:
        data = {
            "task_id": self.task_id,
            "overall": self.overall,
            "rater_id": self.rater_id,
            "timestamp": self.timestamp,
        }
        if self.criteria is not None:
            data["criteria"] = self.criteria
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "Rating":
        return cls(
            task_id=data["task_id"],
            overall=data["overall"],
            rater_id=data["rater_id"],
            timestamp=data.get("timestamp", ""),
            criteria=data.get("criteria"),
        )


def _check_scale(name: str, value) -> None:
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 10:
        raise OutOfRangeError(f"{name} must be an integer in [1, 10], got {value!r}")


class RatingStore:
    """Append-only rating log plus the server-side task resolution map.

    Submissions are serialized through one writer lock and acknowledged
    only after the log line is flushed to disk.  Loading an existing log
    replays it, so duplicate protection survives restarts.
    """

    def __init__(self, log_path: str | Path, resolution: dict[str, str]):
        self.log_path = Path(log_path)
        self.resolution = dict(resolution)
        self._lock = threading.Lock()
        self._ratings: list[Rating] = []
        self._seen: set[tuple[str, str]] = set()
        if self.log_path.exists():
            with open(self.log_path, encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        rating = Rating.from_dict(json.loads(line))
                        self._ratings.append(rating)
                        self._seen.add((rating.task_id, rating.rater_id))

    @property
    def ratings(self) -> list[Rating]:
        with self._lock:
            return list(self._ratings)

    def rated_by(self, rater_id: str) -> set[str]:
        with self._lock:
            return {r.task_id for r in self._ratings if r.rater_id == rater_id}

    def submit(self, rating: Rating) -> Rating:
        """Validate, durably append, then acknowledge."""
        if rating.task_id not in self.resolution:
            raise UnknownTaskError(f"unknown task_id: {rating.task_id!r}")
        _check_scale("overall", rating.overall)
        if rating.criteria is not None:
            for name, value in rating.criteria.items():
                if name not in CRITERIA:
                    raise OutOfRangeError(f"unknown criterion: {name!r}")
                _check_scale(name, value)
        if not rating.timestamp:
            rating = Rating(
                task_id=rating.task_id,
                overall=rating.overall,
                rater_id=rating.rater_id,
                timestamp=datetime.now(timezone.utc).isoformat(),
                criteria=rating.criteria,
            )
        with self._lock:
            if (rating.task_id, rating.rater_id) in self._seen:
                raise DuplicateRatingError(
                    f"rater {rating.rater_id!r} already rated task {rating.task_id!r}"
                )
            with open(self.log_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rating.to_dict(), ensure_ascii=False) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self._ratings.append(rating)
            self._seen.add((rating.task_id, rating.rater_id))
        return rating


@dataclass(frozen=True)
class ExpertAggregate:
    model_name: str
    mean: float
    count: int
    criteria_means: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "model_name": self.model_name,
            "mean": self.mean,
            "count": self.count,
            "criteria_means": self.criteria_means,
            "display": {"mean": f"{self.mean:.3f}"},
        }


def aggregate(store: RatingStore) -> list[ExpertAggregate]:
    """Resolve tasks to true model names and average, one row per model."""
    ratings = store.ratings
    if not ratings:
        raise EmptyStoreError("no ratings to aggregate")
    by_model: dict[str, list[Rating]] = {}
    for rating in ratings:
        model = store.resolution[rating.task_id]
        by_model.setdefault(model, []).append(rating)
    aggregates = []
    for model in sorted(by_model):
        rows = by_model[model]
        criteria_means = {}
        for criterion in CRITERIA:
            values = [r.criteria[criterion] for r in rows if r.criteria and criterion in r.criteria]
            if values:
                criteria_means[criterion] = sum(values) / len(values)
        aggregates.append(
            ExpertAggregate(
                model_name=model,
                mean=sum(r.overall for r in rows) / len(rows),
                count=len(rows),
                criteria_means=criteria_means,
            )
        )
    return aggregates
