"""Text-entry measures computed from session logs.

Covers typing speed (WPM), per-block learnability, keystrokes per character
(KSPC), word error rate via minimum word distance, the keystroke-level error
taxonomy (insertions / omissions / substitutions with the predictive-subset
rule), and deletes per word.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .errors import (
    InvalidDurationError,
    InvalidTargetError,
    UndefinedMetricError,
    UnnormalizedSequenceError,
)
from .layout import KeySequence, clean_word, code_of


@dataclass(frozen=True)
class ErrorCounts:
    insertions: int = 0
    omissions: int = 0
    substitutions: int = 0

    @property
    def total(self) -> int:
        return self.insertions + self.omissions + self.substitutions

    def __add__(self, other: "ErrorCounts") -> "ErrorCounts":
        return ErrorCounts(
            self.insertions + other.insertions,
            self.omissions + other.omissions,
            self.substitutions + other.substitutions,
        )


@dataclass
class PhraseResult:
    """Everything the metrics need from one transcribed phrase."""

    target: str
    transcribed: str  # committed text, trailing auto-space included
    minutes: float
    gestures: int
    selections: int
    deletes: int
    attempts: list[KeySequence]  # normalized entered code per committed word
    block: int = 1
    variant: str = "conventional"

    @property
    def char_length(self) -> int:
        """Transcribed character count: auto-spaces included, trailing one
        excluded."""
        return len(self.transcribed.rstrip(" "))

    @property
    def committed_words(self) -> list[str]:
        return self.transcribed.split()


def wpm_from_count(char_count: int, minutes: float) -> float:
    """(|S| - 1) / T scaled by one word per five characters."""
    if minutes <= 0:
        raise InvalidDurationError(f"duration must be positive, got {minutes}")
    if char_count < 1:
        raise UndefinedMetricError("need at least one transcribed character")
    return (char_count - 1) / minutes / 5


def wpm(transcribed: str, minutes: float) -> float:
    return wpm_from_count(len(transcribed.rstrip(" ")), minutes)


def kspc_from_counts(gestures: int, selections: int, deletes: int, char_length: int) -> float:
    if char_length < 1:
        raise UndefinedMetricError("KSPC undefined for an empty transcription")
    return (gestures + selections + deletes) / char_length


def kspc(result: PhraseResult) -> float:
    return kspc_from_counts(
        result.gestures, result.selections, result.deletes, result.char_length
    )


def mwd(s_words: list[str], p_words: list[str]) -> int:
    """Word-level Levenshtein distance (unit-cost insert/delete/substitute)."""
    prev = list(range(len(p_words) + 1))
    for i, sw in enumerate(s_words, 1):
        cur = [i] + [0] * len(p_words)
        for j, pw in enumerate(p_words, 1):
            cur[j] = min(
                prev[j] + 1,
                cur[j - 1] + 1,
                prev[j - 1] + (sw != pw),
            )
        prev = cur
    return prev[-1]


def wer(transcribed: str, target: str) -> float:
    """Uncorrected word error rate, in percent."""
    p_words = target.split()
    if not p_words:
        raise InvalidTargetError("target phrase is empty")
    return mwd(transcribed.split(), p_words) / len(p_words) * 100.0


def is_subsequence(entered: KeySequence, target: KeySequence) -> bool:
    it = iter(target)
    return all(any(d == t for t in it) for d in entered)


def classify_errors(entered: KeySequence, target: KeySequence) -> ErrorCounts:
    """Keystroke-level error taxonomy of a normalized entered code.

    An entered code that is an in-order subsequence of the target counts as
    error-free (the word can be selected from partial input).  Otherwise a
    minimum-cost alignment is counted, preferring substitutions over
    insert+omit pairs with a deterministic leftmost backtrace.
    """
    entered, target = tuple(entered), tuple(target)
    for seq in (entered, target):
        if any(d not in range(2, 10) for d in seq):
            raise UnnormalizedSequenceError(f"sequence {seq} has digits outside 2-9")
    if is_subsequence(entered, target):
        return ErrorCounts()

    m, n = len(entered), len(target)
    dist = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        dist[i][0] = i
    for j in range(n + 1):
        dist[0][j] = j
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            dist[i][j] = min(
                dist[i - 1][j - 1] + (entered[i - 1] != target[j - 1]),
                dist[i - 1][j] + 1,  # extra entered keystroke: insertion
                dist[i][j - 1] + 1,  # missed target keystroke: omission
            )

    ins = om = sub = 0
    i, j = m, n
    while i > 0 or j > 0:
        # Diagonal first keeps substitutions preferred over insert+omit.
        if i > 0 and j > 0 and dist[i][j] == dist[i - 1][j - 1] + (
            entered[i - 1] != target[j - 1]
        ):
            sub += entered[i - 1] != target[j - 1]
            i, j = i - 1, j - 1
        elif i > 0 and dist[i][j] == dist[i - 1][j] + 1:
            ins += 1
            i -= 1
        else:
            om += 1
            j -= 1
    return ErrorCounts(insertions=ins, omissions=om, substitutions=sub)


def phrase_error_counts(result: PhraseResult) -> ErrorCounts:
    """Sum of per-word taxonomies; attempts pair with target words by
    position, and trailing unmatched attempts or targets are not counted
    here (they surface in the WER instead)."""
    targets = [code_of(clean_word(w)) for w in result.target.split()]
    total = ErrorCounts()
    for attempt, target in zip(result.attempts, targets):
        total = total + classify_errors(attempt, target)
    return total


def deletes_per_word(total_deletes: int, total_words: int) -> float:
    if total_words < 1:
        raise UndefinedMetricError("deletes per word undefined with zero words")
    return total_deletes / total_words


def learnability(results: list[PhraseResult]) -> dict[str, dict[int, float]]:
    """Mean WPM per (variant, block); blocks with no phrases are absent."""
    buckets: dict[str, dict[int, list[float]]] = {}
    for r in results:
        buckets.setdefault(r.variant, {}).setdefault(r.block, []).append(
            wpm(r.transcribed, r.minutes)
        )
    return {
        variant: {block: sum(v) / len(v) for block, v in sorted(blocks.items())}
        for variant, blocks in buckets.items()
    }


@dataclass
class MetricsReport:
    """Per-phrase rows plus per-block and per-variant aggregates."""

    rows: list[dict] = field(default_factory=list)
    per_variant: dict[str, dict] = field(default_factory=dict)
    per_block: dict[str, dict[int, dict]] = field(default_factory=dict)

    @classmethod
    def from_results(cls, results: list[PhraseResult]) -> "MetricsReport":
        rows = []
        for r in results:
            errs = phrase_error_counts(r)
            n_words = max(len(r.committed_words), 1)
            rows.append(
                {
                    "variant": r.variant,
                    "block": r.block,
                    "target": r.target,
                    "transcribed": r.transcribed.rstrip(" "),
                    "wpm": wpm(r.transcribed, r.minutes),
                    "kspc": kspc(r),
                    "wer": wer(r.transcribed, r.target),
                    "insertions": errs.insertions,
                    "omissions": errs.omissions,
                    "substitutions": errs.substitutions,
                    "deletes_per_word": r.deletes / n_words,
                }
            )

        def aggregate(selected: list[dict]) -> dict:
            n = len(selected)
            mean = lambda key: sum(row[key] for row in selected) / n
            return {
                "phrases": n,
                "wpm": mean("wpm"),
                "kspc": mean("kspc"),
                "wer": mean("wer"),
                "insertions_per_phrase": mean("insertions"),
                "omissions_per_phrase": mean("omissions"),
                "substitutions_per_phrase": mean("substitutions"),
                "deletes_per_word": mean("deletes_per_word"),
            }

        per_variant: dict[str, dict] = {}
        per_block: dict[str, dict[int, dict]] = {}
        for variant in sorted({row["variant"] for row in rows}):
            vrows = [row for row in rows if row["variant"] == variant]
            per_variant[variant] = aggregate(vrows)
            per_block[variant] = {
                block: aggregate([row for row in vrows if row["block"] == block])
                for block in sorted({row["block"] for row in vrows})
            }
        return cls(rows=rows, per_variant=per_variant, per_block=per_block)

    def to_json(self) -> str:
        doc = {
            "per_phrase": self.rows,
            "per_variant": self.per_variant,
            "per_block": {
                v: {str(b): agg for b, agg in blocks.items()}
                for v, blocks in self.per_block.items()
            },
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    CSV_FIELDS = [
        "variant",
        "block",
        "wpm",
        "kspc",
        "wer",
        "insertions",
        "omissions",
        "substitutions",
        "deletes_per_word",
    ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(
            buf, fieldnames=self.CSV_FIELDS, extrasaction="ignore", lineterminator="\n"
        )
        writer.writeheader()
        for row in self.rows:
            writer.writerow(row)
        return buf.getvalue()
