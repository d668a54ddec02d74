import json

import pytest

from conftest import GOLDEN, make_corpus, make_record
from sumbench.candidates import CandidateSet
from sumbench.errors import EmptyInputError, MixedProvenanceError, UnknownIdError
from sumbench.report import (
    ABSENT_MARKER,
    ComparisonSheet,
    build_comparison,
    build_expert_table,
    build_rouge_table,
    render,
)
from sumbench.textproc import FULL
from table_fixtures import (
    EXPERT_FIXTURE_ROWS,
    rouge_fixture_summaries,
    summary_from_recalls,
)


class TestRougeTable:
    def test_fixture_row_order(self):
        table = build_rouge_table(rouge_fixture_summaries())
        assert [r.model_name for r in table.rows] == [
            "AraBART",
            "mBART50",
            "AraT5 (summarization-arabic-english-news)",
            "mt5",
        ]

    def test_single_model(self):
        table = build_rouge_table([summary_from_recalls("only", 0.5, 0.4, 0.5)])
        assert len(table.rows) == 1

    def test_mixed_profiles_rejected(self):
        a = summary_from_recalls("a", 0.5, 0.4, 0.5)
        b = summary_from_recalls("b", 0.6, 0.4, 0.6)
        b = type(b)(
            model_name=b.model_name,
            variants=b.variants,
            record_count=b.record_count,
            profile=FULL,
            subset=b.subset,
            seed=b.seed,
        )
        with pytest.raises(MixedProvenanceError):
            build_rouge_table([a, b])

    def test_mixed_record_counts_rejected(self):
        a = summary_from_recalls("a", 0.5, 0.4, 0.5, record_count=10)
        b = summary_from_recalls("b", 0.6, 0.4, 0.6, record_count=11)
        with pytest.raises(MixedProvenanceError):
            build_rouge_table([a, b])

    def test_tie_breaks_alphabetically(self):
        rows = build_rouge_table(
            [summary_from_recalls("zeta", 0.5, 0.1, 0.5), summary_from_recalls("alpha", 0.5, 0.2, 0.5)]
        ).rows
        assert [r.model_name for r in rows] == ["alpha", "zeta"]

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            build_rouge_table([])


class TestExpertTable:
    def test_fixture_order(self):
        table = build_expert_table(EXPERT_FIXTURE_ROWS)
        assert [r.model_name for r in table.rows][0] == "AraBART"
        assert [r.model_name for r in table.rows][-1] == "MT5"

    def test_single_model_display(self):
        table = build_expert_table([("m", 8.0, 3)])
        assert render(table, "markdown").decode().splitlines()[2] == "| m | 8.000 |"

    def test_tie_breaks_alphabetically(self):
        table = build_expert_table([("zeta", 8.0, 2), ("alpha", 8.0, 2)])
        assert [r.model_name for r in table.rows] == ["alpha", "zeta"]

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            build_expert_table([])

    def test_zero_count_rejected(self):
        with pytest.raises(EmptyInputError):
            build_expert_table([("m", 8.0, 0)])


class TestComparison:
    def _corpus(self):
        return make_corpus(make_record("r1", "النص الأصلي هنا.", "ملخص الخبير هنا."))

    def test_sheet_with_all_models(self):
        sets = [
            CandidateSet(model_name="m1", summaries={"r1": "ملخص أول"}),
            CandidateSet(model_name="m2", summaries={"r1": "ملخص ثان"}),
        ]
        sheet = build_comparison(self._corpus(), sets, "r1")
        assert sheet.candidates == (("m1", "ملخص أول"), ("m2", "ملخص ثان"))

    def test_absent_marker(self):
        sets = [CandidateSet(model_name="m1", summaries={"other": "x"})]
        sheet = build_comparison(self._corpus(), sets, "r1")
        assert sheet.candidates == (("m1", None),)
        assert ABSENT_MARKER in render(sheet, "markdown").decode()

    def test_no_candidate_sets(self):
        sheet = build_comparison(self._corpus(), [], "r1")
        md = render(sheet, "markdown").decode()
        assert "Original text" in md and "Expert" in md

    def test_unknown_id(self):
        with pytest.raises(UnknownIdError):
            build_comparison(self._corpus(), [], "nope")

    def test_markdown_escapes_cells(self):
        corpus = make_corpus(make_record("r1", "سطر|أول\nوثان.", "ملخص."))
        md = render(build_comparison(corpus, [], "r1"), "markdown").decode()
        assert "\\|" in md and "<br>" in md


class TestRender:
    @pytest.mark.parametrize("name", ["rouge", "expert"])
    @pytest.mark.parametrize("fmt,suffix", [("json", "json"), ("csv", "csv"), ("markdown", "md")])
    def test_matches_golden(self, name, fmt, suffix):
        if name == "rouge":
            table = build_rouge_table(rouge_fixture_summaries())
        else:
            table = build_expert_table(EXPERT_FIXTURE_ROWS)
        expected = (GOLDEN / f"report.{name}.{suffix}").read_bytes()
        assert render(table, fmt) == expected

    def test_deterministic_across_calls(self):
        table = build_rouge_table(rouge_fixture_summaries())
        assert render(table, "json") == render(table, "json")

    def test_json_round_trip(self):
        table = build_rouge_table(rouge_fixture_summaries())
        payload = json.loads(render(table, "json"))
        assert [row["model"] for row in payload["rows"]] == [r.model_name for r in table.rows]
        assert payload["provenance"]["aggregation"] == "macro-recall"

    def test_display_rounding_does_not_feed_back(self):
        table = build_rouge_table([summary_from_recalls("m", 1 / 3, 0.25, 1 / 3)])
        payload = json.loads(render(table, "json"))
        assert payload["rows"][0]["rouge1"] == 1 / 3
        assert payload["rows"][0]["display"]["rouge1"] == "0.3333"

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render(build_expert_table([("m", 5.0, 1)]), "xml")
