"""Deterministic extractive baseline summarizer.

Sentences are scored by the mean max-scaled term frequency of their
tokens, computed over the whole text, then selected greedily under a word
budget and emitted in document order.  No model weights, no randomness:
the full summarize -> score -> report pipeline runs on CPU in seconds.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .candidates import CandidateSet
from .corpus import Corpus
from .errors import NoSentencesError
from .textproc import (
    PAPER_DEFAULT,
    NormalizationConfig,
    SentenceSpan,
    normalize,
    segment_sentences,
    tokenize_words,
)

BASELINE_MODEL_NAME = "baseline-extractive"


@dataclass(frozen=True)
class ExtractiveConfig:
    word_budget: int = 256  # mirrors the reference-summary token budget
    min_sentence_words: int = 1
    normalization: NormalizationConfig = PAPER_DEFAULT

    def __post_init__(self):
        if self.min_sentence_words < 1:
            raise ValueError("min_sentence_words must be positive")
        if self.word_budget < self.min_sentence_words:
            raise ValueError("word_budget must be >= min_sentence_words")


@dataclass(frozen=True)
class SentenceScore:
    span: SentenceSpan
    score: float
    rank: int  # 1-based position after sorting; ties break by earlier offset


def _word_count(span: SentenceSpan) -> int:
    return len(span.text.split())


def score_sentences(text: str, config: ExtractiveConfig = ExtractiveConfig()) -> list[SentenceScore]:
    """Score each sentence; returned in document order with sort ranks."""
    spans = segment_sentences(text)
    if not spans:
        raise NoSentencesError("no sentences to score")
    frequencies: Counter = Counter(tokenize_words(normalize(text, config.normalization)))
    peak = max(frequencies.values()) if frequencies else 1
    scores = []
    for span in spans:
        tokens = tokenize_words(normalize(span.text, config.normalization))
        if _word_count(span) < config.min_sentence_words or not len(tokens):
            scores.append(0.0)
        else:
            scores.append(sum(frequencies[t] / peak for t in tokens) / len(tokens))
    order = sorted(range(len(spans)), key=lambda i: (-scores[i], spans[i].start))
    ranks = [0] * len(spans)
    for position, i in enumerate(order, start=1):
        ranks[i] = position
    return [
        SentenceScore(span=span, score=score, rank=rank)
        for span, score, rank in zip(spans, scores, ranks)
    ]


def summarize_extractive(text: str, config: ExtractiveConfig = ExtractiveConfig()) -> str:
    """Greedy budgeted selection of the highest-scoring sentences.

    The top-ranked sentence is always kept, even when it alone exceeds the
    budget; afterwards sentences are taken in rank order whenever they
    still fit, and the selection is emitted in document order.
    """
    scored = sorted(score_sentences(text, config), key=lambda s: s.rank)
    selected = [scored[0]]
    total = _word_count(scored[0].span)
    for sentence in scored[1:]:
        words = _word_count(sentence.span)
        if total + words <= config.word_budget:
            selected.append(sentence)
            total += words
    selected.sort(key=lambda s: s.span.start)
    return " ".join(s.span.text for s in selected)


def make_baseline_candidates(
    corpus: Corpus, config: ExtractiveConfig = ExtractiveConfig()
) -> CandidateSet:
    """Summarize every record's section content into a CandidateSet."""
    summaries = {
        rec.id: summarize_extractive(rec.section_content, config) for rec in corpus.records
    }
    return CandidateSet(model_name=BASELINE_MODEL_NAME, summaries=summaries)
