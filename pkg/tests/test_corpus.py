import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadgal.audit.corpus import (
    CorpusEntry,
    dump_csv,
    dump_json,
    load_corpus,
    parse_csv,
    parse_json,
    search_s3_candidates,
    table2_corpus,
    write_corpus,
)

FIXTURE = Path(__file__).parent / "fixtures" / "table2.csv"

tag_value = st.from_regex(r"[A-Za-z0-9_\-]{1,6}", fullmatch=True)
labels = st.lists(st.tuples(st.sampled_from(["d", "ramification", "disc", "group", "note"]), tag_value), max_size=3).map(
    lambda kv: " ".join(f"{k}={v}" for k, v in kv)
)
entries = st.integers(1, 8).flatmap(
    lambda n: st.builds(
        CorpusEntry,
        st.just(n),
        st.tuples(*[st.integers(-10**6, 10**6)] * n, st.integers(1, 10**6)),
        labels,
    )
)


@settings(max_examples=60, deadline=None)
@given(st.lists(entries, max_size=8))
def test_csv_round_trip(es):
    back = parse_csv(dump_csv(es))
    assert back.errors == [] and back.entries == es


@settings(max_examples=60, deadline=None)
@given(st.lists(entries, max_size=8))
def test_json_round_trip(es):
    back = parse_json(dump_json(es))
    assert back.errors == [] and back.entries == es


def test_file_round_trip(tmp_path):
    es = table2_corpus()
    for name in ("c.csv", "c.json"):
        write_corpus(es, tmp_path / name)
        assert load_corpus(tmp_path / name).entries == es


def test_fixture_matches_embedded_table():
    assert load_corpus(FIXTURE).entries == table2_corpus()


def test_filter_by_d():
    res = search_s3_candidates(load_corpus(FIXTURE), d_filter=-46, census_bound=500)
    assert [r.d for r in res] == [-46]
    assert res.candidates[0].claimed_ramification == "unramified"


def test_filter_by_ramification_and_ordering():
    res = search_s3_candidates(load_corpus(FIXTURE), ramification_filter="unramified", census_bound=500)
    assert [r.d for r in res] == [-46, -62]
    allrows = search_s3_candidates(load_corpus(FIXTURE), census_bound=500)
    ds = [abs(r.d) for r in allrows]
    assert ds == sorted(ds) and len(allrows) == 10 and allrows.rejected == []


def test_empty_corpus():
    assert len(search_s3_candidates(parse_csv(""))) == 0
    assert len(search_s3_candidates(parse_csv("degree,coeffs,label\n"))) == 0
    assert len(search_s3_candidates([])) == 0


def test_reducible_row_is_rejected():
    c = parse_csv("degree,coeffs,label\n6,0;-1;0;0;0;0;1,d=-1\n")
    res = search_s3_candidates(c)
    assert len(res) == 0
    (entry, report), = res.rejected
    assert report.hard_fails == ["irreducible"]


def test_missing_d_uses_disc_core():
    f = table2_corpus()[0]
    bare = CorpusEntry(6, f.coeffs, "")
    res = search_s3_candidates([bare], census_bound=200)
    assert [r.d for r in res] == [f.d]


def test_non_sextic_rows_are_skipped():
    assert len(search_s3_candidates([CorpusEntry(2, (1, 0, 1))])) == 0


@pytest.mark.parametrize(
    "text,row",
    [
        ("degree,coeffs,label\n6,1;2,\n", 2),
        ("degree,coeffs,label\n2,1;0;0,\n", 2),
        ("degree,coeffs,label\n2,1;x;1,\n", 2),
        ("degree,coeffs,label\n2,1;0;1,notatag\n", 2),
        ("degree,coeffs,label\n2,1;0;1\n2,1;0;1,a=b,extra\n", 3),
    ],
)
def test_row_errors_are_reported(text, row):
    c = parse_csv(text)
    assert [e.row for e in c.errors] == [row]


def test_bad_header():
    c = parse_csv("deg,coeffs\n2,1;0;1\n")
    assert c.entries == [] and c.errors[0].row == 1


def test_json_errors():
    c = parse_json(json.dumps([{"degree": 2, "coeffs": [1, 0, 1]}, {"coeffs": [1]}, 5]))
    assert len(c.entries) == 1 and [e.row for e in c.errors] == [1, 2]
    assert parse_json("{}").errors
    with pytest.raises(json.JSONDecodeError):
        parse_json("[")
