"""Phrase sampling, counterbalancing, the log format, and replay."""

import json

import pytest

from t9swipe.decoder import DecoderConfig, Variant
from t9swipe.errors import (
    InsufficientPhrasesError,
    MalformedLogError,
    ReplayMismatchError,
    T9Error,
)
from t9swipe.layout import KeyboardGeometry
from t9swipe.session import (
    SessionLog,
    StudyPlan,
    counterbalance,
    replay,
    sample_phrases,
)
from t9swipe.simulator import SimParams, simulate_session


def small_plan(phrase_set, index=0, seed=5):
    return StudyPlan.create(
        phrase_set,
        participant_id=f"p{index:02d}",
        participant_index=index,
        seed=seed,
        blocks_per_variant=2,
        phrases_per_block=2,
    )


@pytest.fixture(scope="module")
def sim_log(lexicon, phrase_set):
    plan = small_plan(phrase_set)
    return simulate_session(plan, SimParams(seed=5), lexicon)


# -- sampling & counterbalancing ------------------------------------------


def test_sample_phrases_is_deterministic(phrase_set):
    a = sample_phrases(phrase_set, 20, seed=1)
    b = sample_phrases(phrase_set, 20, seed=1)
    assert a == b
    assert len(set(a)) == 20
    assert all(p in phrase_set for p in a)


def test_sample_phrases_differs_across_seeds(phrase_set):
    assert sample_phrases(phrase_set, 20, seed=1) != sample_phrases(
        phrase_set, 20, seed=2
    )


def test_sample_phrases_full_set_is_permutation(phrase_set):
    got = sample_phrases(phrase_set, len(phrase_set), seed=0)
    assert sorted(got) == sorted(phrase_set)


def test_sample_phrases_insufficient(phrase_set):
    with pytest.raises(InsufficientPhrasesError):
        sample_phrases(phrase_set, len(phrase_set) + 1, seed=0)


def test_counterbalance_rows():
    v = ["A", "B", "C"]
    assert counterbalance(v, 0) == ["A", "B", "C"]
    assert counterbalance(v, 1) == ["B", "C", "A"]
    assert counterbalance(v, 2) == ["C", "A", "B"]
    assert counterbalance(v, 3) == counterbalance(v, 0)


def test_counterbalance_is_balanced():
    v = ["A", "B", "C"]
    firsts = [counterbalance(v, i)[0] for i in range(6)]
    assert all(firsts.count(x) == 2 for x in v)


def test_counterbalance_needs_three_variants():
    with pytest.raises(T9Error):
        counterbalance(["A", "B"], 0)


# -- study plan -----------------------------------------------------------


def test_plan_shape(phrase_set):
    plan = StudyPlan.create(phrase_set, "p00", participant_index=1, seed=0)
    assert plan.variants[0] is Variant.ENHANCED_KEY1  # rotated by index
    for v in plan.variants:
        assert len(plan.phrases[v.value]) == 20
        block1 = plan.phrases_for_block(v, 1)
        assert len(block1) == 5
        assert block1 == plan.phrases[v.value][:5]


def test_plan_json_round_trip(phrase_set):
    plan = small_plan(phrase_set, index=2)
    again = StudyPlan.from_json_dict(json.loads(json.dumps(plan.to_json_dict())))
    assert again == plan


def test_plan_rejects_wrong_phrase_count(phrase_set):
    plan = small_plan(phrase_set)
    doc = plan.to_json_dict()
    doc["phrases"][plan.variants[0].value] = ["too few"]
    with pytest.raises(T9Error):
        StudyPlan.from_json_dict(doc)


# -- log format -----------------------------------------------------------


def test_log_serialize_parse_round_trip(sim_log):
    text = sim_log.serialize()
    parsed = SessionLog.parse(text)
    assert parsed.serialize() == text  # byte-identical
    assert parsed.header["schema"] == 1
    assert parsed.header["lexicon_hash"] == sim_log.header["lexicon_hash"]


def test_log_write_read(tmp_path, sim_log):
    path = tmp_path / "session.t9log"
    sim_log.write(path)
    assert SessionLog.read(path).serialize() == sim_log.serialize()


def test_log_events_are_time_ordered(sim_log):
    stamps = [e["t"] for e in sim_log.events if "t" in e]
    assert stamps == sorted(stamps)


def test_log_phrase_events_balanced(sim_log):
    starts = sum(e["type"] == "phrase-start" for e in sim_log.events)
    ends = sum(e["type"] == "phrase-end" for e in sim_log.events)
    assert starts == ends > 0


def test_parse_rejects_malformed_logs():
    with pytest.raises(MalformedLogError):
        SessionLog.parse("")
    with pytest.raises(MalformedLogError):
        SessionLog.parse("{not json\n")
    with pytest.raises(MalformedLogError):
        SessionLog.parse('{"type":"emission"}\n')
    with pytest.raises(MalformedLogError):
        SessionLog.parse('{"type":"header","schema":99}\n')


# -- replay ---------------------------------------------------------------


def test_replay_simulated_log_is_error_free(sim_log, lexicon):
    results = replay(sim_log, lexicon)
    assert len(results) == 12  # 3 variants x 2 blocks x 2 phrases
    for r in results:
        assert r.transcribed.strip() == r.target
        assert r.deletes == 0


def test_replay_is_deterministic(sim_log, lexicon):
    assert replay(sim_log, lexicon) == replay(sim_log, lexicon)


def test_replay_empty_log(lexicon):
    log = SessionLog.new(KeyboardGeometry(), DecoderConfig(), lexicon)
    assert replay(log, lexicon) == []


def test_replay_detects_corrupted_emission(sim_log, lexicon):
    log = SessionLog.parse(sim_log.serialize())
    idx = next(i for i, e in enumerate(log.events) if e["type"] == "emission")
    log.events[idx]["digit"] = 9 if log.events[idx]["digit"] != 9 else 8
    with pytest.raises(ReplayMismatchError) as err:
        replay(log, lexicon)
    assert err.value.event_index == idx


def test_replay_detects_corrupted_candidates(sim_log, lexicon):
    log = SessionLog.parse(sim_log.serialize())
    idx = next(i for i, e in enumerate(log.events) if e["type"] == "candidates")
    log.events[idx]["words"] = list(reversed(log.events[idx]["words"])) + ["bogus"]
    with pytest.raises(ReplayMismatchError) as err:
        replay(log, lexicon)
    assert err.value.event_index == idx


def test_replay_detects_foreign_lexicon(sim_log):
    from t9swipe.predictor import Lexicon

    with pytest.raises(ReplayMismatchError):
        replay(sim_log, Lexicon({"apple": 1}))
