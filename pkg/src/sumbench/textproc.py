"""Arabic-aware text normalization, word tokenization, n-grams, sentences.

Normalization applies the enabled transforms in a fixed order:
tatweel -> diacritics -> alef variants -> ta marbuta -> latin case ->
punctuation.  The all-flags-off config is the identity transform, and
every config is idempotent.  Scoring code records the config it used so
reported numbers stay traceable to their preprocessing.
"""

from __future__ import annotations

import unicodedata
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import InvalidNError

TATWEEL = "ـ"
# Arabic harakat (short vowels, shadda, sukun, etc.) plus superscript alef.
DIACRITICS = frozenset(chr(c) for c in range(0x064B, 0x0660)) | {"ٰ"}
ALEF_VARIANTS = {"آ": "ا", "أ": "ا", "إ": "ا"}
TA_MARBUTA = "ة"
HA = "ه"

SENTENCE_TERMINATORS = frozenset({".", "?", "!", "؟", "؛"})  # ؟ ؛


@dataclass(frozen=True)
class NormalizationConfig:
    """Which metric-side text transforms are enabled."""

    strip_tatweel: bool = False
    strip_diacritics: bool = False
    normalize_alef: bool = False
    normalize_ta_marbuta: bool = False
    fold_latin_case: bool = False
    strip_punctuation: bool = False

    def to_dict(self) -> dict:
        return {
            "strip_tatweel": self.strip_tatweel,
            "strip_diacritics": self.strip_diacritics,
            "normalize_alef": self.normalize_alef,
            "normalize_ta_marbuta": self.normalize_ta_marbuta,
            "fold_latin_case": self.fold_latin_case,
            "strip_punctuation": self.strip_punctuation,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NormalizationConfig":
        return cls(**{k: bool(v) for k, v in data.items()})


#: Default scoring profile: conservative transforms only, no alef or
#: ta-marbuta folding so surface forms stay comparable to the references.
PAPER_DEFAULT = NormalizationConfig(
    strip_tatweel=True,
    strip_diacritics=True,
    fold_latin_case=True,
    strip_punctuation=True,
)

IDENTITY = NormalizationConfig()

FULL = NormalizationConfig(
    strip_tatweel=True,
    strip_diacritics=True,
    normalize_alef=True,
    normalize_ta_marbuta=True,
    fold_latin_case=True,
    strip_punctuation=True,
)

PROFILES = {
    "paper-default": PAPER_DEFAULT,
    "identity": IDENTITY,
    "full": FULL,
}


@lru_cache(maxsize=None)
def _is_latin(ch: str) -> bool:
    if not ch.isalpha():
        return False
    return unicodedata.name(ch, "").startswith("LATIN")


@lru_cache(maxsize=None)
def _is_punctuation(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def normalize(text: str, config: NormalizationConfig = IDENTITY) -> str:
    """Apply the enabled transforms in their fixed order. Idempotent."""
    if config.strip_tatweel:
        text = text.replace(TATWEEL, "")
    if config.strip_diacritics:
        text = "".join(ch for ch in text if ch not in DIACRITICS)
    if config.normalize_alef:
        text = "".join(ALEF_VARIANTS.get(ch, ch) for ch in text)
    if config.normalize_ta_marbuta:
        text = text.replace(TA_MARBUTA, HA)
    if config.fold_latin_case:
        text = "".join(ch.lower() if _is_latin(ch) else ch for ch in text)
    if config.strip_punctuation:
        # Punctuation becomes a space so removing it never glues two words
        # together; the resulting runs collapse to single spaces.
        text = "".join(" " if _is_punctuation(ch) else ch for ch in text)
        text = " ".join(text.split())
    return text


@dataclass(frozen=True)
class TokenSequence(Sequence):
    """Ordered, non-empty, whitespace-free text units that ROUGE counts."""

    tokens: tuple[str, ...]
    source_config: NormalizationConfig | None = None

    def __post_init__(self):
        for tok in self.tokens:
            if not tok or any(ch.isspace() for ch in tok):
                raise ValueError(f"invalid token: {tok!r}")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]


def tokenize_words(text: str, config: NormalizationConfig | None = None) -> TokenSequence:
    """Split on Unicode whitespace, dropping empty tokens."""
    return TokenSequence(tokens=tuple(text.split()), source_config=config)


def ngrams(seq: Sequence[str], n: int) -> Counter:
    """All contiguous n-grams of ``seq`` with multiplicities."""
    if not isinstance(n, int) or n < 1:
        raise InvalidNError(f"n must be a positive integer, got {n!r}")
    toks = tuple(seq)
    return Counter(toks[i : i + n] for i in range(len(toks) - n + 1))


@dataclass(frozen=True)
class SentenceSpan:
    """One sentence with its character offsets into the source text."""

    text: str
    start: int
    end: int


def segment_sentences(text: str) -> list[SentenceSpan]:
    """Split after a terminator (. ? ! ؟ ؛) followed by whitespace or EOT.

    The terminator stays with its sentence; text without any terminator is
    one span; spans carry no surrounding whitespace.
    """
    spans: list[SentenceSpan] = []
    n = len(text)
    start = None
    last_nonspace = -1
    for i, ch in enumerate(text):
        if ch.isspace():
            continue
        if start is None:
            start = i
        last_nonspace = i
        if ch in SENTENCE_TERMINATORS and (i + 1 == n or text[i + 1].isspace()):
            spans.append(SentenceSpan(text=text[start : i + 1], start=start, end=i + 1))
            start = None
    if start is not None:
        spans.append(
            SentenceSpan(text=text[start : last_nonspace + 1], start=start, end=last_nonspace + 1)
        )
    return spans
