import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import make_corpus, make_record
from sumbench.corpus import (
    CleaningConfig,
    Corpus,
    SplitAssignment,
    clean_corpus,
    clean_text,
    length_profile,
    parse_corpus,
    serialize_corpus,
    split_corpus,
    split_sizes,
)
from sumbench.errors import (
    CorpusTooSmallError,
    DuplicateIdError,
    EmptyCorpusError,
    SchemaError,
    UnknownFieldError,
)

WELL_FORMED = {
    "id": "u1-l1-s1",
    "unit_title": "الوحدة",
    "lesson_title": "الدرس",
    "section_content": "نص القسم.",
    "questions": None,
    "expert_summary": "ملخص الخبير.",
}


def write_jsonl(path, rows):
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")


class TestParseCorpus:
    def test_two_rows_order_preserved(self, tmp_path):
        rows = [WELL_FORMED, {**WELL_FORMED, "id": "u1-l1-s2"}]
        path = tmp_path / "c.jsonl"
        write_jsonl(path, rows)
        corpus = parse_corpus(path, "jsonl")
        assert corpus.ids() == ["u1-l1-s1", "u1-l1-s2"]

    def test_missing_field_named_with_row(self, tmp_path):
        row = dict(WELL_FORMED)
        del row["expert_summary"]
        path = tmp_path / "c.jsonl"
        write_jsonl(path, [WELL_FORMED, row])
        with pytest.raises(SchemaError, match=r"row 1.*expert_summary"):
            parse_corpus(path, "jsonl")

    def test_unknown_field_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(path, [{**WELL_FORMED, "extra_column": "x"}])
        with pytest.raises(SchemaError, match="extra_column"):
            parse_corpus(path, "jsonl")

    def test_duplicate_id(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(path, [WELL_FORMED, dict(WELL_FORMED)])
        with pytest.raises(DuplicateIdError, match="u1-l1-s1"):
            parse_corpus(path, "jsonl")

    def test_empty_id_rejected(self, tmp_path):
        path = tmp_path / "c.jsonl"
        write_jsonl(path, [{**WELL_FORMED, "id": ""}])
        with pytest.raises(SchemaError, match="'id'"):
            parse_corpus(path, "jsonl")

    def test_fixture_parses(self, tiny_corpus):
        assert len(tiny_corpus) == 10
        assert tiny_corpus.records[3].questions is None

    def test_csv_round_trip(self, tiny_corpus, tmp_path):
        path = tmp_path / "c.csv"
        serialize_corpus(tiny_corpus, path, "csv")
        again = parse_corpus(path, "csv")
        assert again == tiny_corpus

    def test_jsonl_round_trip(self, tiny_corpus, tmp_path):
        path = tmp_path / "c.jsonl"
        serialize_corpus(tiny_corpus, path, "jsonl")
        assert parse_corpus(path, "jsonl") == tiny_corpus

    def test_csv_duplicate_id(self, tmp_path):
        path = tmp_path / "c.csv"
        corpus = make_corpus(make_record("r1", "نص", "س"), make_record("r2", "نص", "س"))
        serialize_corpus(corpus, path, "csv")
        text = path.read_text(encoding="utf-8").replace("r2", "r1")
        path.write_text(text, encoding="utf-8")
        with pytest.raises(DuplicateIdError):
            parse_corpus(path, "csv")

    def test_csv_missing_column(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("id,unit_title\nu1,t\n", encoding="utf-8")
        with pytest.raises(SchemaError, match="missing field"):
            parse_corpus(path, "csv")

    def test_csv_multiline_cell(self, tmp_path):
        path = tmp_path / "c.csv"
        record = dict(WELL_FORMED, section_content="سطر أول\nوسطر ثان.")
        corpus = make_corpus(make_record("r1", record["section_content"], "ملخص."))
        serialize_corpus(corpus, path, "csv")
        again = parse_corpus(path, "csv")
        assert again.records[0].section_content == "سطر أول\nوسطر ثان."


class TestCleanText:
    def test_whitespace_and_case(self):
        assert clean_text("  Hello   World  ") == "hello world"

    def test_tatweel_removed(self):
        assert clean_text("الــجسم") == "الجسم"

    def test_whitespace_only_collapses_to_empty(self):
        assert clean_text("   ") == ""

    def test_zero_width_and_controls(self):
        assert clean_text("a​bc") == "abc"
        assert clean_text("a\nb\tc") == "a b c"

    def test_arabic_diacritics_kept(self):
        # cleaning is not normalization: harakat survive
        assert clean_text("أَحْمَد") == "أَحْمَد"

    def test_extra_codepoints(self):
        config = CleaningConfig(extra_codepoints=("ـ", "*"))
        assert clean_text("نـص*", config) == "نص"

    @given(
        st.text(
            alphabet=st.characters(blacklist_categories=("Cs",), max_codepoint=0x2FFF),
            max_size=80,
        )
    )
    def test_idempotent(self, text):
        once = clean_text(text)
        assert clean_text(once) == once

    @given(
        st.text(
            alphabet=st.characters(blacklist_categories=("Cs",), max_codepoint=0x2FFF),
            max_size=60,
        )
    )
    def test_introduces_no_new_characters(self, text):
        # only input characters, their lowercase images, and the space
        allowed = set(text) | set("".join(c.lower() for c in text)) | {" "}
        assert set(clean_text(text)) <= allowed


class TestCleanCorpus:
    def test_drops_whitespace_only_summary(self):
        corpus = make_corpus(
            make_record("r1", "نص أول.", "ملخص."),
            make_record("r2", "نص ثان.", "   "),
            make_record("r3", "نص ثالث.", "ملخص آخر."),
        )
        cleaned, report = clean_corpus(corpus)
        assert cleaned.ids() == ["r1", "r3"]
        assert report.records_dropped_empty == 1
        assert report.records_in == report.records_out + report.records_dropped_empty

    def test_already_clean_is_identity(self):
        corpus = make_corpus(make_record("r1", "نص نظيف.", "ملخص نظيف."))
        cleaned, report = clean_corpus(corpus)
        assert cleaned == corpus
        assert report.fields_modified == 0

    def test_all_records_dropped(self):
        corpus = make_corpus(make_record("r1", "ــ", "ملخص."))
        with pytest.raises(EmptyCorpusError):
            clean_corpus(corpus)

    def test_counts_by_class(self):
        corpus = make_corpus(make_record("r1", "نـص​.", "ملـخص."))
        cleaned, report = clean_corpus(corpus)
        assert report.chars_removed_by_class == {"tatweel": 2, "zero_width": 1, "control": 1}
        assert report.fields_modified == 2

    def test_empty_questions_becomes_null(self):
        corpus = make_corpus(make_record("r1", "نص.", "ملخص.", questions="  "))
        cleaned, _ = clean_corpus(corpus)
        assert cleaned.records[0].questions is None


class TestLengthProfile:
    def test_simple_count(self):
        corpus = make_corpus(make_record("r1", "a b c", "س"))
        profile = length_profile(corpus, "section_content", 10)
        assert profile.counts == {"r1": 3}
        assert profile.min == profile.max == 3
        assert profile.mean == 3.0

    def test_buckets_sparse(self):
        corpus = make_corpus(
            make_record("r1", " ".join(["كلمة"] * 10), "س"),
            make_record("r2", " ".join(["كلمة"] * 1010), "س"),
        )
        profile = length_profile(corpus, "section_content", 500)
        assert profile.buckets == [(0, 500, 1), (1000, 1500, 1)]

    def test_bucket_counts_sum_to_records(self, tiny_corpus):
        profile = length_profile(tiny_corpus, "section_content", 7)
        assert sum(n for _, _, n in profile.buckets) == len(tiny_corpus)

    def test_unknown_field(self, tiny_corpus):
        with pytest.raises(UnknownFieldError):
            length_profile(tiny_corpus, "not_a_field", 10)

    def test_none_questions_counts_zero(self):
        corpus = make_corpus(make_record("r1", "نص", "س"))
        profile = length_profile(corpus, "questions", 10)
        assert profile.counts == {"r1": 0}


class TestSplit:
    def test_sizes_111(self):
        assert split_sizes(111) == (77, 17, 17)

    def test_sizes_10(self):
        assert split_sizes(10) == (7, 2, 1)

    def test_deterministic(self, tiny_corpus):
        a = split_corpus(tiny_corpus, 42)
        b = split_corpus(tiny_corpus, 42)
        assert a == b

    def test_seed_changes_assignment(self, tiny_corpus):
        assert split_corpus(tiny_corpus, 1) != split_corpus(tiny_corpus, 2)

    def test_too_small(self):
        corpus = make_corpus(make_record("r1", "نص", "س"), make_record("r2", "نص", "س"))
        with pytest.raises(CorpusTooSmallError):
            split_corpus(corpus, 0)

    @given(st.integers(3, 200), st.integers(0, 2**32))
    def test_partition_property(self, n, seed):
        corpus = make_corpus(*[make_record(f"r{i}", "نص", "س") for i in range(n)])
        split = split_corpus(corpus, seed)
        train, val, test = set(split.train_ids), set(split.validation_ids), set(split.test_ids)
        assert len(train | val | test) == n
        assert not (train & val or train & test or val & test)
        assert (len(train), len(val), len(test)) == split_sizes(n)
        assert len(val) >= len(test)

    def test_save_load_round_trip(self, tiny_corpus, tmp_path):
        split = split_corpus(tiny_corpus, 42)
        path = tmp_path / "split.json"
        split.save(path)
        assert SplitAssignment.load(path) == split

    def test_subset_lookup(self, tiny_corpus):
        split = split_corpus(tiny_corpus, 42)
        assert split.subset("train") == split.train_ids
        with pytest.raises(ValueError):
            split.subset("dev")
