"""Acceptance suite: one test per top-level criterion, each at its stated
tolerance, emitting a single pass/fail summary line."""

import itertools
import random
import time
from functools import lru_cache

import pytest

from t9swipe import data
from t9swipe.decoder import (
    Cause,
    DecoderConfig,
    Variant,
    decode_word,
    normalize_sequence,
)
from t9swipe.layout import code_of, consecutive_same_key_stats
from t9swipe.metrics import (
    ErrorCounts,
    MetricsReport,
    classify_errors,
    kspc_from_counts,
    wpm_from_count,
)
from t9swipe.session import SessionLog, StudyPlan, replay
from t9swipe.simulator import SimParams, expected_gestures, simulate_session, synthesize_traces


def report(line):
    print(f"\n{line}")


def load_words(path):
    from t9swipe.layout import clean_word

    with open(path, encoding="utf-8") as fh:
        return [clean_word(line) for line in fh if clean_word(line)]


def test_dolch_statistics():
    """Consecutive-same-key rates on the canonical Dolch lists (±2 words)."""
    t0 = time.time()
    nonnouns = consecutive_same_key_stats(load_words(data.dolch_nonnouns_path()))
    nouns = consecutive_same_key_stats(load_words(data.dolch_nouns_path()))
    elapsed = time.time() - t0
    ok = (
        nonnouns.total == 220
        and abs(nonnouns.affected_count - 68) <= 2
        and nouns.total == 95
        and abs(nouns.affected_count - 45) <= 2
        and elapsed < 1.0
    )
    report(
        f"{'PASS' if ok else 'FAIL'} dolch-statistics: non-nouns {nonnouns}, "
        f"nouns {nouns} (expected 68/220 and 45/95 +-2) in {elapsed:.2f}s"
    )
    assert ok


def test_round_trip_suite(geometry, word_sample):
    """1000 words x 3 variants: noiseless traces decode to code_of(word)."""
    t0 = time.time()
    params = SimParams()
    failures = 0
    for word in word_sample:
        code = code_of(word)
        for variant in Variant:
            config = DecoderConfig(variant=variant)
            traces = synthesize_traces(word, variant, geometry, params, config=config)
            if normalize_sequence(decode_word(traces, config, geometry)) != code:
                failures += 1
    elapsed = time.time() - t0
    ok = failures == 0 and elapsed < 30.0
    report(
        f"{'PASS' if ok else 'FAIL'} round-trip: {failures} failures over "
        f"{len(word_sample)} words x 3 variants in {elapsed:.1f}s (budget 30s)"
    )
    assert ok


def test_gesture_count_law(geometry, word_sample):
    """Lift-retap needs 1 + adjacent-repeat traces; variants B/C need one."""
    params = SimParams()
    violations = 0
    for word in word_sample:
        code = code_of(word)
        repeats = sum(a == b for a, b in zip(code, code[1:]))
        for variant in Variant:
            config = DecoderConfig(variant=variant)
            traces = synthesize_traces(word, variant, geometry, params, config=config)
            want = 1 + repeats if variant is Variant.CONVENTIONAL else 1
            if len(traces) != want or want != expected_gestures(word, variant):
                violations += 1
    ok = violations == 0
    report(
        f"{'PASS' if ok else 'FAIL'} gesture-count-law: {violations} violations "
        f"over {len(word_sample)} words x 3 variants"
    )
    assert ok


def test_mwd_oracle():
    """Word-level distance equals exhaustive edit-script search."""
    from t9swipe.metrics import mwd

    @lru_cache(maxsize=None)
    def exhaustive(s, p):
        if not s:
            return len(p)
        if not p:
            return len(s)
        return min(
            exhaustive(s[1:], p[1:]) + (s[0] != p[0]),
            exhaustive(s[1:], p) + 1,
            exhaustive(s, p[1:]) + 1,
        )

    rng = random.Random(23)
    vocab = ("a", "b", "c", "d")
    mismatches = 0
    for _ in range(500):
        s = tuple(rng.choices(vocab, k=rng.randint(0, 5)))
        p = tuple(rng.choices(vocab, k=rng.randint(0, 5)))
        if mwd(list(s), list(p)) != exhaustive(s, p):
            mismatches += 1
    ok = mismatches == 0
    report(f"{'PASS' if ok else 'FAIL'} mwd-oracle: {mismatches} mismatches over 500 pairs")
    assert ok


def test_error_taxonomy_oracle():
    """Taxonomy totals equal brute-force minimal edits on all pairs of
    length <= 6 over digits {2,7}; the subset rule fires exactly for
    in-order subsequences."""

    @lru_cache(maxsize=None)
    def min_edits(s, p):
        if not s:
            return len(p)
        if not p:
            return len(s)
        return min(
            min_edits(s[1:], p[1:]) + (s[0] != p[0]),
            min_edits(s[1:], p) + 1,
            min_edits(s, p[1:]) + 1,
        )

    def subsequence(s, p):
        return any(
            tuple(p[i] for i in idx) == s
            for idx in itertools.combinations(range(len(p)), len(s))
        )

    seqs = [
        seq for n in range(7) for seq in itertools.product((2, 7), repeat=n)
    ]
    mismatches = 0
    for entered in seqs:
        for target in seqs:
            counts = classify_errors(entered, target)
            if subsequence(entered, target):
                if counts != ErrorCounts():
                    mismatches += 1
            elif counts.total != min_edits(entered, target):
                mismatches += 1
    ok = mismatches == 0
    report(
        f"{'PASS' if ok else 'FAIL'} error-taxonomy-oracle: {mismatches} "
        f"mismatches over {len(seqs) ** 2} sequence pairs"
    )
    assert ok


def test_formula_checks():
    """Hand-checked WPM and KSPC values and the delete increment."""
    checks = [
        abs(wpm_from_count(19, 0.5) - 7.2) <= 1e-9,
        kspc_from_counts(1, 1, 0, 5) == pytest.approx(0.4),
        kspc_from_counts(2, 1, 0, 5) == pytest.approx(0.6),
        kspc_from_counts(2, 1, 1, 17)
        == pytest.approx(kspc_from_counts(2, 1, 0, 17) + 1 / 17),
    ]
    ok = all(checks)
    report(
        f"{'PASS' if ok else 'FAIL'} formula-checks: wpm(19, 0.5)="
        f"{wpm_from_count(19, 0.5)}, kspc B=0.4 A=0.6, delete step 1/|S|"
    )
    assert ok


def test_replay_determinism(lexicon, phrase_set):
    """A simulated log replays cleanly twice with byte-identical reports."""
    plan = StudyPlan.create(
        phrase_set, "accept", participant_index=0, seed=17,
        blocks_per_variant=2, phrases_per_block=3,
    )
    log = simulate_session(plan, SimParams(seed=17), lexicon)
    parsed = SessionLog.parse(log.serialize())
    first = MetricsReport.from_results(replay(parsed, lexicon))
    second = MetricsReport.from_results(replay(SessionLog.parse(log.serialize()), lexicon))
    ok = (
        first.to_json() == second.to_json()
        and first.to_csv() == second.to_csv()
        and len(first.rows) == 18
    )
    report(
        f"{'PASS' if ok else 'FAIL'} replay-determinism: {len(first.rows)} phrases, "
        f"reports byte-identical={first.to_json() == second.to_json()}"
    )
    assert ok


def test_wiggle_robustness(geometry, word_sample):
    """No spurious repeats at sigma <= 0.15 mm; full recall at sigma 0."""
    config = DecoderConfig(variant=Variant.WIGGLE)
    spurious = 0
    for sigma in (0.05, 0.10, 0.15):
        for i, word in enumerate(word_sample):
            code = code_of(word)
            wanted = sum(a == b for a, b in zip(code, code[1:]))
            traces = synthesize_traces(
                word, Variant.WIGGLE, geometry,
                SimParams(noise_sigma_mm=sigma, seed=i),
                config=config, rng=random.Random(i),
            )
            got = sum(
                e.cause is Cause.WIGGLE_REPEAT
                for e in decode_word(traces, config, geometry)
            )
            spurious += got > wanted

    missed = 0
    repeat_words = [
        w for w in word_sample
        if any(a == b for a, b in zip(code_of(w), code_of(w)[1:]))
    ]
    for word in repeat_words:
        code = code_of(word)
        wanted = sum(a == b for a, b in zip(code, code[1:]))
        traces = synthesize_traces(word, Variant.WIGGLE, geometry, SimParams(),
                                   config=config)
        got = sum(
            e.cause is Cause.WIGGLE_REPEAT
            for e in decode_word(traces, config, geometry)
        )
        missed += got != wanted
    ok = spurious == 0 and missed == 0
    report(
        f"{'PASS' if ok else 'FAIL'} wiggle-robustness: {spurious} spurious over "
        f"3 sigmas x {len(word_sample)} words; {missed} recall misses over "
        f"{len(repeat_words)} repeat-words at sigma 0"
    )
    assert ok
