"""Study plumbing: phrase sampling, counterbalancing, the `.t9log` event-log
format, and deterministic replay of logs through the decoder and composer.

A `.t9log` file is line-delimited JSON.  The first line is a header carrying
the schema version, keyboard geometry, decoder config defaults, and the hash
of the lexicon the session ran against.  Every following line is one event:

    {"type": "variant-start", "variant": "...", "t": ...}
    {"type": "phrase-start", "target": "...", "block": 1, "t": ...}
    {"type": "touch-down" | "touch-move" | "touch-up", "x": .., "y": .., "t": ..}
    {"type": "emission", "digit": 7, "cause": "key-entry", "t": ..}
    {"type": "candidates", "words": [...], "t": ..}
    {"type": "commit", "word": "...", "t": ..}
    {"type": "delete", "t": ..}
    {"type": "phrase-end", "t": ..}
    {"type": "note", "text": "...", "t": ..}

Events are canonically serialized (sorted keys, no whitespace) so a parsed
and re-serialized log is byte-identical.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .decoder import (
    Cause,
    DecoderConfig,
    TouchSample,
    Variant,
    WordDecoder,
)
from .errors import (
    InsufficientPhrasesError,
    MalformedLogError,
    ReplayMismatchError,
    T9Error,
)
from .layout import KeyboardGeometry
from .metrics import PhraseResult
from .predictor import Composer, Lexicon

SCHEMA_VERSION = 1


def sample_phrases(phrase_set: list[str], n: int, seed: int) -> list[str]:
    """Uniform sample without replacement, deterministic for a given seed."""
    if n > len(phrase_set):
        raise InsufficientPhrasesError(
            f"asked for {n} phrases from a set of {len(phrase_set)}"
        )
    return random.Random(seed).sample(phrase_set, n)


def counterbalance(variants: list, participant_index: int) -> list:
    """Balanced 3x3 Latin-square row for a participant: each variant appears
    in each position equally often across consecutive participants."""
    if len(variants) != 3:
        raise T9Error("counterbalancing is defined for exactly 3 variants")
    shift = participant_index % 3
    return variants[shift:] + variants[:shift]


def load_phrase_set(path) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.strip().lower() for line in fh if line.strip()]


@dataclass
class StudyPlan:
    """One participant's task: variant order and the phrases per variant."""

    participant_id: str
    variants: list[Variant]
    phrases: dict[str, list[str]]  # variant value -> phrases, in task order
    blocks_per_variant: int = 4
    phrases_per_block: int = 5
    practice_duration_s: float = 180.0

    def __post_init__(self):
        need = self.blocks_per_variant * self.phrases_per_block
        for variant in self.variants:
            got = len(self.phrases[variant.value])
            if got != need:
                raise T9Error(
                    f"variant {variant.value} has {got} phrases, needs {need}"
                )

    @classmethod
    def create(
        cls,
        phrase_set: list[str],
        participant_id: str,
        participant_index: int,
        seed: int = 0,
        blocks_per_variant: int = 4,
        phrases_per_block: int = 5,
    ) -> "StudyPlan":
        variants = counterbalance(list(Variant), participant_index)
        n = blocks_per_variant * phrases_per_block
        phrases = {
            v.value: sample_phrases(phrase_set, n, seed=hash((seed, i)) & 0x7FFFFFFF)
            for i, v in enumerate(variants)
        }
        return cls(
            participant_id=participant_id,
            variants=variants,
            phrases=phrases,
            blocks_per_variant=blocks_per_variant,
            phrases_per_block=phrases_per_block,
        )

    def phrases_for_block(self, variant: Variant, block: int) -> list[str]:
        """Phrases of one block, 1-indexed."""
        lo = (block - 1) * self.phrases_per_block
        return self.phrases[variant.value][lo : lo + self.phrases_per_block]

    def to_json_dict(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "variants": [v.value for v in self.variants],
            "phrases": self.phrases,
            "blocks_per_variant": self.blocks_per_variant,
            "phrases_per_block": self.phrases_per_block,
            "practice_duration_s": self.practice_duration_s,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "StudyPlan":
        return cls(
            participant_id=doc["participant_id"],
            variants=[Variant(v) for v in doc["variants"]],
            phrases=doc["phrases"],
            blocks_per_variant=doc.get("blocks_per_variant", 4),
            phrases_per_block=doc.get("phrases_per_block", 5),
            practice_duration_s=doc.get("practice_duration_s", 180.0),
        )


def _canon(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


@dataclass
class SessionLog:
    """Parsed `.t9log`: one header plus time-ordered events."""

    header: dict
    events: list[dict] = field(default_factory=list)

    @classmethod
    def new(
        cls,
        geometry: KeyboardGeometry,
        config: DecoderConfig,
        lexicon: Lexicon,
        participant_id: str = "sim",
        metadata: dict | None = None,
    ) -> "SessionLog":
        header = {
            "type": "header",
            "schema": SCHEMA_VERSION,
            "geometry": geometry.to_json_dict(),
            "config": config.to_json_dict(),
            "lexicon_hash": lexicon.content_hash(),
            "participant": participant_id,
        }
        if metadata:
            header["metadata"] = metadata
        return cls(header=header)

    def append(self, event_type: str, **fields) -> None:
        self.events.append({"type": event_type, **fields})

    def serialize(self) -> str:
        lines = [_canon(self.header)]
        lines.extend(_canon(e) for e in self.events)
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.serialize())

    @classmethod
    def parse(cls, text: str) -> "SessionLog":
        lines = [line for line in text.split("\n") if line]
        if not lines:
            raise MalformedLogError("empty log")
        try:
            records = [json.loads(line) for line in lines]
        except json.JSONDecodeError as exc:
            raise MalformedLogError(f"bad JSON line: {exc}") from None
        header, events = records[0], records[1:]
        if header.get("type") != "header":
            raise MalformedLogError("first line is not a header")
        if header.get("schema") != SCHEMA_VERSION:
            raise MalformedLogError(f"unsupported schema {header.get('schema')!r}")
        return cls(header=header, events=events)

    @classmethod
    def read(cls, path) -> "SessionLog":
        with open(path, encoding="utf-8") as fh:
            return cls.parse(fh.read())


def replay(log: SessionLog, lexicon: Lexicon) -> list[PhraseResult]:
    """Re-run decoder and composer over the raw touch events of a log and
    check every recorded emission, candidate list, and commit against the
    recomputation.  Raises :class:`ReplayMismatchError` naming the first
    divergent event."""
    if log.header["lexicon_hash"] != lexicon.content_hash():
        raise ReplayMismatchError("lexicon does not match the one the log was recorded with")
    geometry = KeyboardGeometry.from_json_dict(log.header["geometry"])
    base_config = dict(log.header["config"])
    config = DecoderConfig.from_json_dict(base_config)

    results: list[PhraseResult] = []
    decoder: WordDecoder | None = None
    composer: Composer | None = None
    state: dict = {}
    pending: list = []  # recomputed emissions not yet matched against the log
    variant = config.variant

    def fail(i: int, msg: str):
        raise ReplayMismatchError(f"event {i}: {msg}", event_index=i)

    for i, ev in enumerate(log.events):
        kind = ev["type"]
        if kind == "variant-start":
            variant = Variant(ev["variant"])
            config = DecoderConfig.from_json_dict({**base_config, "variant": variant.value})
        elif kind == "phrase-start":
            if pending:
                fail(i, f"{len(pending)} recomputed emissions were never logged")
            decoder = WordDecoder(config, geometry)
            composer = Composer(lexicon)
            state = {
                "target": ev["target"],
                "block": ev.get("block", 1),
                "first_down": None,
                "last_commit": None,
                "gestures": 0,
                "deletes": 0,
                "attempts": [],
            }
        elif decoder is None or composer is None:
            if kind in ("touch-down", "touch-move", "touch-up", "emission",
                        "candidates", "commit", "delete", "phrase-end"):
                fail(i, f"{kind} before any phrase-start")
        elif kind == "touch-down":
            state["gestures"] += 1
            if state["first_down"] is None:
                state["first_down"] = ev["t"]
            pending.extend(decoder.touch(TouchSample(ev["x"], ev["y"], ev["t"])))
        elif kind == "touch-move":
            pending.extend(decoder.touch(TouchSample(ev["x"], ev["y"], ev["t"])))
        elif kind == "touch-up":
            pending.extend(decoder.lift())
        elif kind == "emission":
            if not pending:
                fail(i, "logged emission not produced by recomputation")
            got = pending.pop(0)
            want = (ev["digit"], ev["cause"], ev["t"])
            have = (got.digit, got.cause.value, got.t)
            if want != have:
                fail(i, f"emission mismatch: logged {want}, recomputed {have}")
            composer.append_emission(got)
        elif kind == "candidates":
            want = ev["words"]
            have = [c.word for c in composer.candidates(k=len(want) or None)]
            if want != have:
                fail(i, f"candidate list mismatch: logged {want}, recomputed {have}")
        elif kind == "commit":
            attempt = composer.code
            try:
                composer.commit(ev["word"])
            except T9Error as exc:
                fail(i, f"commit rejected on replay: {exc}")
            state["attempts"].append(attempt)
            state["last_commit"] = ev["t"]
            decoder.reset_word()
        elif kind == "delete":
            state["deletes"] += 1
            composer.delete_keystroke()
            decoder.set_last_effective(composer.buffer[-1] if composer.buffer else None)
        elif kind == "phrase-end":
            if pending:
                fail(i, f"{len(pending)} recomputed emissions were never logged")
            if composer.committed:
                first = state["first_down"]
                last = state["last_commit"]
                minutes = max((last - first) / 60000.0, 1e-9) if first is not None else 1e-9
                results.append(
                    PhraseResult(
                        target=state["target"],
                        transcribed=composer.transcript,
                        minutes=minutes,
                        gestures=state["gestures"],
                        selections=len(composer.committed),
                        deletes=state["deletes"],
                        attempts=state["attempts"],
                        block=state["block"],
                        variant=variant.value,
                    )
                )
            decoder = composer = None
        # note / block-start and unknown auxiliary events are ignored
    return results
