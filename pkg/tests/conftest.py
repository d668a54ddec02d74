from pathlib import Path

import pytest

from sumbench.corpus import Corpus, CorpusRecord, parse_corpus

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def tiny_corpus_path() -> Path:
    return FIXTURES / "tiny.jsonl"


@pytest.fixture
def tiny_corpus(tiny_corpus_path) -> Corpus:
    return parse_corpus(tiny_corpus_path, "jsonl")


def make_record(record_id: str, content: str, summary: str, **overrides) -> CorpusRecord:
    fields = {
        "id": record_id,
        "unit_title": "unit",
        "lesson_title": "lesson",
        "section_content": content,
        "questions": None,
        "expert_summary": summary,
    }
    fields.update(overrides)
    return CorpusRecord(**fields)


def make_corpus(*records: CorpusRecord) -> Corpus:
    return Corpus(records=tuple(records))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if "test_acceptance" in report.nodeid and getattr(report, "when", "call") == "call":
                name = report.nodeid.split("::")[-1]
                lines.append((name, "PASS" if status == "passed" else "FAIL"))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, status in lines:
            terminalreporter.write_line(f"{status}  {name}")
