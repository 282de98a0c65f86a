import json

import pytest

from chainspec.census import (
    _load_log,
    conjecture_census,
    find_cospectral_pairs,
    find_ms_gap_examples,
    h2_family_member,
    make_record,
    seidel_distinct_count,
    work_units,
)
from chainspec.errors import InvalidRangeError, PersistenceFailureError
from chainspec.spectra import are_cospectral
from chainspec.strings import ChainString, canonical_form, enumerate_chain_strings


def test_no_pairs_below_six():
    res = conjecture_census(5)
    assert res.pairs == []
    assert len(res.records) == sum(1 for n in range(2, 6) for _ in enumerate_chain_strings(n, dedup=True))


def test_seidel_pairs_on_request():
    # K_{2,2} and K_{1,3} are switching equivalent
    pairs = conjecture_census(4, matrix_kind="seidel").pairs
    assert {(p["G"], p["H"]) for p in pairs} == {("0^2 1^2", "0^3 1^1")}
    assert conjecture_census(4, matrix_kind="both").pairs == pairs


def test_census_contains_counterexample():
    pairs = conjecture_census(9).pairs
    g, h = canonical_form(ChainString((1, 2, 2, 4))), canonical_form(ChainString((2, 1, 4, 2)))
    found = {frozenset((p["G"], p["H"])): p for p in pairs}
    hit = found[frozenset((str(g), str(h)))]
    assert hit["family"] == "h2-construction" and hit["n"] == 9
    assert all(p["kind"] == "adjacency" for p in pairs)
    assert all(p["h"] != [1, 1] for p in pairs)


def test_pairs_are_genuine():
    for n in (8, 9, 10):
        for g, h in find_cospectral_pairs(n):
            assert are_cospectral(g, h)
            assert canonical_form(g) != canonical_form(h)
        for g, h in find_cospectral_pairs(n, "seidel"):
            assert are_cospectral(g, h, "seidel")


def test_h2_family_detected():
    pairs = find_cospectral_pairs(9, h=2)
    assert any(h2_family_member(g, h) for g, h in pairs)
    assert h2_family_member(ChainString((1, 2, 2, 4)), ChainString((2, 1, 4, 2)))
    assert not h2_family_member(ChainString((2, 4, 3, 1)), ChainString((3, 2, 4, 1)))


def test_ms_gap_range_errors():
    with pytest.raises(InvalidRangeError):
        find_ms_gap_examples(10, 2)
    with pytest.raises(InvalidRangeError):
        find_ms_gap_examples(5, 3)


def test_ms_gap_small():
    for g in find_ms_gap_examples(12, 3):
        assert 4 < seidel_distinct_count(g) < 6


def test_record_json_roundtrip():
    r = make_record(ChainString((1, 2, 2, 4)))
    assert r.blocks == (4, 2, 2, 1)  # canonical
    from chainspec.census import CensusRecord
    assert CensusRecord.from_json(json.loads(json.dumps(r.to_json()))) == r


def test_jobs_do_not_change_output():
    assert conjecture_census(9, jobs=1).render() == conjecture_census(9, jobs=3).render()


def test_resume_from_log(tmp_path):
    log = tmp_path / "census.jsonl"
    full = conjecture_census(8, jobs=1, log_path=str(log)).render()
    lines = log.read_text().splitlines(keepends=True)
    # truncate mid-way and tear the last line
    cut = len(lines) // 2
    log.write_text("".join(lines[:cut]) + lines[cut][:10])
    done_before = _load_log(str(log))
    assert 0 < len(done_before) < len(work_units(8))
    assert conjecture_census(8, jobs=1, log_path=str(log)).render() == full
    # a second resume replays everything
    assert len(_load_log(str(log))) == len(work_units(8))
    assert conjecture_census(8, jobs=1, log_path=str(log)).render() == full


def test_bad_schema(tmp_path):
    log = tmp_path / "bad.jsonl"
    log.write_text('{"schema": 99}\n')
    with pytest.raises(PersistenceFailureError):
        conjecture_census(4, log_path=str(log))
