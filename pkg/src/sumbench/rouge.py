"""ROUGE-1/2, ROUGE-L, and ROUGE-Lsum with clipped matching.

All three headline numbers are recall-form, denominated by the reference:
n-gram variants divide clipped match counts by the reference n-gram total,
and ROUGE-L divides the longest-common-subsequence length by the reference
length.  Precision and F1 ride along, clearly labeled.  A zero denominator
never raises: the affected value is 0 and the score carries a degenerate
flag, so corpus-level scoring cannot abort on a one-token reference.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .candidates import CandidateSet
from .corpus import DEFAULT_CLEANING, Corpus, clean_text
from .errors import EmptyReferenceError, MissingCandidateError, MissingRecordError
from .textproc import (
    PAPER_DEFAULT,
    NormalizationConfig,
    TokenSequence,
    ngrams,
    normalize,
    segment_sentences,
    tokenize_words,
)

VARIANTS = ("rouge1", "rouge2", "rougeL", "rougeLsum")
MEASURES = ("recall", "precision", "f1")


@dataclass(frozen=True)
class RougeScore:
    recall: float
    precision: float
    f1: float
    degenerate: bool = False

    def to_dict(self) -> dict:
        return {
            "recall": self.recall,
            "precision": self.precision,
            "f1": self.f1,
            "degenerate": self.degenerate,
            "display": {m: f"{getattr(self, m):.4f}" for m in MEASURES},
        }


def _score(match: int, ref_total: int, cand_total: int) -> RougeScore:
    recall = match / ref_total if ref_total else 0.0
    precision = match / cand_total if cand_total else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return RougeScore(recall, precision, f1, degenerate=not (ref_total and cand_total))


def rouge_n(reference: Sequence[str], candidate: Sequence[str], n: int) -> RougeScore:
    """Clipped n-gram overlap: sum over reference n-grams of min(counts)."""
    ref_grams = ngrams(reference, n)
    cand_grams = ngrams(candidate, n)
    match = sum(min(count, cand_grams[gram]) for gram, count in ref_grams.items())
    return _score(match, sum(ref_grams.values()), sum(cand_grams.values()))


def lcs_length(x: Sequence[str], y: Sequence[str]) -> int:
    """Longest common (not necessarily contiguous) subsequence length."""
    xs, ys = tuple(x), tuple(y)
    if not xs or not ys:
        return 0
    row = [0] * (len(ys) + 1)
    for xi in xs:
        prev = 0
        for j, yj in enumerate(ys, start=1):
            cur = row[j]
            if xi == yj:
                row[j] = prev + 1
            elif row[j - 1] > row[j]:
                row[j] = row[j - 1]
            prev = cur
    return row[-1]


def _lcs_ref_indices(ref: tuple[str, ...], cand: tuple[str, ...]) -> set[int]:
    """Reference-side token positions of one canonical LCS against ``cand``."""
    m, n = len(ref), len(cand)
    if m == 0 or n == 0:
        return set()
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if ref[i - 1] == cand[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    indices: set[int] = set()
    i, j = m, n
    while i > 0 and j > 0:
        if ref[i - 1] == cand[j - 1]:
            indices.add(i - 1)
            i -= 1
            j -= 1
        elif table[i - 1][j] > table[i][j - 1]:
            i -= 1
        else:
            j -= 1
    return indices


def rouge_l(reference: Sequence[str], candidate: Sequence[str]) -> RougeScore:
    """LCS length over reference length (recall) and candidate length."""
    match = lcs_length(reference, candidate)
    return _score(match, len(tuple(reference)), len(tuple(candidate)))


def rouge_l_sum(
    reference_sentences: Sequence[Sequence[str]],
    candidate_sentences: Sequence[Sequence[str]],
) -> RougeScore:
    """Summary-level union-LCS variant of ROUGE-L.

    For each reference sentence, union the LCS-matched reference positions
    against every candidate sentence; hits are then clipped so each
    reference and candidate token is credited at most once.
    """
    refs = [tuple(s) for s in reference_sentences]
    cands = [tuple(s) for s in candidate_sentences]
    ref_total = sum(len(s) for s in refs)
    cand_total = sum(len(s) for s in cands)
    if not ref_total or not cand_total:
        return _score(0, ref_total, cand_total)
    ref_budget = Counter(tok for s in refs for tok in s)
    cand_budget = Counter(tok for s in cands for tok in s)
    hits = 0
    for ref_sent in refs:
        union: set[int] = set()
        for cand_sent in cands:
            union |= _lcs_ref_indices(ref_sent, cand_sent)
        for idx in sorted(union):
            tok = ref_sent[idx]
            if ref_budget[tok] > 0 and cand_budget[tok] > 0:
                hits += 1
                ref_budget[tok] -= 1
                cand_budget[tok] -= 1
    return _score(hits, ref_total, cand_total)


@dataclass(frozen=True)
class PairReport:
    """All four variant scores for one reference/candidate pair."""

    record_id: str
    scores: dict[str, RougeScore]  # keys exactly VARIANTS
    profile: NormalizationConfig

    def to_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "scores": {v: self.scores[v].to_dict() for v in VARIANTS},
            "profile": self.profile.to_dict(),
        }


def _sentence_tokens(text: str, config: NormalizationConfig) -> list[TokenSequence]:
    sentences = []
    for span in segment_sentences(text):
        toks = tokenize_words(normalize(span.text, config), config)
        if len(toks):
            sentences.append(toks)
    return sentences


def score_pair(
    reference: str,
    candidate: str,
    config: NormalizationConfig = PAPER_DEFAULT,
    record_id: str = "",
) -> PairReport:
    """Normalize, tokenize, segment, and compute all four variants."""
    ref_tokens = tokenize_words(normalize(reference, config), config)
    if not len(ref_tokens):
        raise EmptyReferenceError(f"record {record_id!r}: reference empty after normalization")
    cand_tokens = tokenize_words(normalize(candidate, config), config)
    scores = {
        "rouge1": rouge_n(ref_tokens, cand_tokens, 1),
        "rouge2": rouge_n(ref_tokens, cand_tokens, 2),
        "rougeL": rouge_l(ref_tokens, cand_tokens),
        "rougeLsum": rouge_l_sum(
            _sentence_tokens(reference, config), _sentence_tokens(candidate, config)
        ),
    }
    return PairReport(record_id=record_id, scores=scores, profile=config)


@dataclass(frozen=True)
class CorpusRougeSummary:
    """Macro-averaged scores of one model over a set of records."""

    model_name: str
    variants: dict[str, dict[str, float]]  # variant -> measure -> mean
    record_count: int
    profile: NormalizationConfig
    subset: str | None = None
    seed: int | None = None
    forced_empty_ids: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        variants = {}
        for variant in VARIANTS:
            means = self.variants[variant]
            variants[variant] = dict(means)
            variants[variant]["display"] = {m: f"{means[m]:.4f}" for m in MEASURES}
        return {
            "model_name": self.model_name,
            "variants": variants,
            "record_count": self.record_count,
            "profile": self.profile.to_dict(),
            "subset": self.subset,
            "seed": self.seed,
            "forced_empty_ids": list(self.forced_empty_ids),
            "aggregation": "macro",
        }


def score_set(
    corpus: Corpus,
    candidates: CandidateSet,
    ids: Sequence[str],
    config: NormalizationConfig = PAPER_DEFAULT,
    subset: str | None = None,
    seed: int | None = None,
    force: bool = False,
) -> CorpusRougeSummary:
    """Macro-average each variant over ``ids``, in sorted-id order.

    Candidate texts pass through the corpus cleaning rules before scoring.
    With ``force``, records missing from the candidate set score as empty
    candidates and are flagged; without it they raise.
    """
    wanted = sorted(ids)
    if not wanted:
        raise ValueError("no record ids to score")
    records = corpus.by_id()
    missing_records = [i for i in wanted if i not in records]
    if missing_records:
        raise MissingRecordError(missing_records)
    missing_candidates = [i for i in wanted if i not in candidates.summaries]
    if missing_candidates and not force:
        raise MissingCandidateError(missing_candidates)
    reports = []
    for record_id in wanted:
        candidate = clean_text(candidates.summaries.get(record_id, ""), DEFAULT_CLEANING)
        reports.append(
            score_pair(records[record_id].expert_summary, candidate, config, record_id=record_id)
        )
    variants = {
        variant: {
            measure: sum(getattr(r.scores[variant], measure) for r in reports) / len(reports)
            for measure in MEASURES
        }
        for variant in VARIANTS
    }
    return CorpusRougeSummary(
        model_name=candidates.model_name,
        variants=variants,
        record_count=len(reports),
        profile=config,
        subset=subset,
        seed=seed,
        forced_empty_ids=tuple(missing_candidates),
    )
