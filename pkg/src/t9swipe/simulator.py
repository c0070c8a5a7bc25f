"""Synthetic gesture generation: canonical (noiseless) and jittered traces
per variant, and whole scripted sessions in the `.t9log` format.

Paths are piecewise-linear through key centers.  The enhanced variant routes
repeats through the key-1 center (alternating for runs), the wiggle variant
zig-zags inside the key until the configured number of direction changes is
reached, and the conventional variant either splits the word into several
traces (lift-retap) or holds still long enough for a dwell repeat.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace

from .decoder import DecoderConfig, GestureTrace, TouchSample, Variant, WordDecoder
from .errors import T9Error
from .layout import KeyboardGeometry, clean_word, code_of
from .predictor import Composer, Lexicon
from .session import SessionLog, StudyPlan


@dataclass(frozen=True)
class SimParams:
    sampling_rate_hz: float = 60.0
    speed_mm_s: float = 60.0
    noise_sigma_mm: float = 0.0
    wiggle_amplitude_mm: float = 2.0
    dwell_emulation: str = "lift-retap"  # or "dwell"
    seed: int = 0
    # Optional per-block speed override, e.g. (40, 50, 60, 70) for
    # learnability fixtures.
    block_speeds_mm_s: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.sampling_rate_hz <= 0 or self.speed_mm_s <= 0:
            raise T9Error("sampling rate and speed must be positive")
        if self.noise_sigma_mm < 0:
            raise T9Error("noise sigma must be non-negative")
        if self.dwell_emulation not in ("lift-retap", "dwell"):
            raise T9Error(f"unknown dwell emulation {self.dwell_emulation!r}")

    def to_json_dict(self) -> dict:
        return {
            "sampling_rate_hz": self.sampling_rate_hz,
            "speed_mm_s": self.speed_mm_s,
            "noise_sigma_mm": self.noise_sigma_mm,
            "wiggle_amplitude_mm": self.wiggle_amplitude_mm,
            "dwell_emulation": self.dwell_emulation,
            "seed": self.seed,
            "block_speeds_mm_s": list(self.block_speeds_mm_s)
            if self.block_speeds_mm_s
            else None,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SimParams":
        doc = dict(doc)
        speeds = doc.pop("block_speeds_mm_s", None)
        return cls(
            **{k: doc[k] for k in doc if k in cls.__dataclass_fields__},
            block_speeds_mm_s=tuple(speeds) if speeds else None,
        )


# A waypoint is (x, y, key, hold): a polyline vertex, the key it is meant to
# lie in, and whether the finger pauses there for a dwell repeat.


def _wp(geometry, digit, hold=False):
    x, y = geometry.key_center(digit)
    return (x, y, digit, hold)


def _waypoints_enhanced(code, geometry):
    pts, current = [], None
    for d in code:
        nxt = 1 if d == current else d
        pts.append(_wp(geometry, nxt))
        current = nxt
    return [pts]


def _waypoints_wiggle(code, geometry, config, params):
    amplitude = params.wiggle_amplitude_mm
    half = min(geometry.key_width, geometry.key_height) / 2
    if not amplitude < half:
        raise T9Error(
            f"wiggle amplitude {amplitude} must stay inside a key (< {half})"
        )
    if not amplitude > config.jitter_epsilon:
        raise T9Error("wiggle amplitude must exceed the decoder's jitter epsilon")
    spacing = params.speed_mm_s / params.sampling_rate_hz
    for seg in (amplitude, 2 * amplitude):
        # The decoder registers a direction only after two significant
        # steps, so every zig-zag leg needs at least two sub-steps that each
        # clear the jitter epsilon.
        n = math.ceil(seg / spacing)
        if n < 2 or seg / n < config.jitter_epsilon:
            raise T9Error(
                "sampling spacing incompatible with the wiggle amplitude and "
                "jitter epsilon; adjust speed_mm_s or sampling_rate_hz"
            )

    n = config.direction_change_threshold
    pts = []
    i = 0
    while i < len(code):
        d = code[i]
        run = 1
        while i + run < len(code) and code[i + run] == d:
            run += 1
        cx, cy = geometry.key_center(d)
        pts.append((cx, cy, d, False))
        repeats = run - 1
        if repeats:
            # One chained zig-zag of repeats*threshold reversals.  The first
            # offset continues the approach's X direction, so the opening
            # step establishes a sign instead of counting as a change; the
            # final reversal is the return to the key center.
            f = 1
            if len(pts) >= 2 and pts[-2][0] != cx:
                f = 1 if cx > pts[-2][0] else -1
            for j in range(repeats * n):
                pts.append((cx + f * amplitude * (1 if j % 2 == 0 else -1), cy, d, False))
            pts.append((cx, cy, d, False))
        i += run
    return [pts]


def _waypoints_conventional(code, geometry, dwell_emulation):
    if dwell_emulation == "lift-retap":
        strokes, stroke = [], []
        prev = None
        for d in code:
            if d == prev:
                if stroke:
                    strokes.append(stroke)
                stroke = [_wp(geometry, d)]
            else:
                stroke.append(_wp(geometry, d))
            prev = d
        strokes.append(stroke)
        return strokes
    pts = []
    prev = None
    for d in code:
        pts.append(_wp(geometry, d, hold=d == prev))
        prev = d
    return [pts]


def _sample_stroke(points, t0, params, config, geometry, rng):
    """Sample a waypoint polyline at the configured rate and speed.

    Vertices are always included so reversal apexes survive sampling.  A
    fast swipe spends sub-sample time over keys it merely passes across, so
    samples whose noiseless position falls outside the two keys a segment
    connects are dropped; timestamps still advance through the crossing.
    Hold waypoints repeat their position for a bit longer than the dwell
    threshold.
    """
    spacing = params.speed_mm_s / params.sampling_rate_hz
    dt = 1000.0 / params.sampling_rate_hz
    hold_ms = config.dwell_repeat_ms * 1.25

    samples = []
    t = t0

    def push(x, y, allowed):
        if geometry.key_at(x, y) not in allowed:
            return
        if params.noise_sigma_mm > 0:
            x += rng.gauss(0, params.noise_sigma_mm)
            y += rng.gauss(0, params.noise_sigma_mm)
        samples.append(TouchSample(x=x, y=y, t=t))

    prev = None
    for x1, y1, key1, hold in points:
        if prev is None:
            push(x1, y1, {key1})
            prev = (x1, y1, key1)
            continue
        x0, y0, key0 = prev
        dist = math.hypot(x1 - x0, y1 - y0)
        n = max(1, math.ceil(dist / spacing)) if dist > 0 else 0
        for k in range(1, n + 1):
            t += dt * (dist / n) / spacing
            push(x0 + (x1 - x0) * k / n, y0 + (y1 - y0) * k / n, {key0, key1})
        if hold:
            end = t + hold_ms
            while t < end:
                t += dt
                push(x1, y1, {key1})
        prev = (x1, y1, key1)
    if not samples:
        raise T9Error("stroke produced no in-key samples")
    return GestureTrace(samples=tuple(samples)), t


def synthesize_traces(
    word: str,
    variant: Variant,
    geometry: KeyboardGeometry,
    params: SimParams,
    config: DecoderConfig | None = None,
    t0: float = 0.0,
    rng: random.Random | None = None,
) -> list[GestureTrace]:
    """Canonical traces for a word; one trace per required gesture."""
    config = config or DecoderConfig(variant=variant)
    rng = rng or random.Random(params.seed)
    code = code_of(clean_word(word))
    if not code:
        raise T9Error(f"word {word!r} has no letters")

    if variant is Variant.ENHANCED_KEY1:
        strokes = _waypoints_enhanced(code, geometry)
    elif variant is Variant.WIGGLE:
        strokes = _waypoints_wiggle(code, geometry, config, params)
    else:
        strokes = _waypoints_conventional(code, geometry, params.dwell_emulation)

    traces = []
    t = t0
    for stroke in strokes:
        trace, t = _sample_stroke(stroke, t, params, config, geometry, rng)
        traces.append(trace)
        t += 150.0  # inter-gesture gap
    return traces


def expected_gestures(word: str, variant: Variant, dwell_emulation: str = "lift-retap") -> int:
    """Closed-form gesture count for an error-free word."""
    code = code_of(clean_word(word))
    repeats = sum(a == b for a, b in zip(code, code[1:]))
    if variant is Variant.CONVENTIONAL and dwell_emulation == "lift-retap":
        return 1 + repeats
    return 1


def simulate_session(
    plan: StudyPlan,
    params: SimParams,
    lexicon: Lexicon,
    geometry: KeyboardGeometry | None = None,
    base_config: DecoderConfig | None = None,
    display_candidates: int = 5,
) -> SessionLog:
    """Full `.t9log` for a synthetic error-free participant."""
    geometry = geometry or KeyboardGeometry()
    base_config = base_config or DecoderConfig()
    rng = random.Random(params.seed)
    log = SessionLog.new(
        geometry,
        base_config,
        lexicon,
        participant_id=plan.participant_id,
        metadata={"generator": "simulator", "params": params.to_json_dict()},
    )

    t = 0.0
    for variant in plan.variants:
        config = replace(base_config, variant=variant)
        log.append("variant-start", variant=variant.value, t=t)
        for block in range(1, plan.blocks_per_variant + 1):
            speed = (
                params.block_speeds_mm_s[block - 1]
                if params.block_speeds_mm_s
                else params.speed_mm_s
            )
            block_params = replace(params, speed_mm_s=speed)
            for phrase in plan.phrases_for_block(variant, block):
                words = [clean_word(w) for w in phrase.split()]
                missing = [w for w in words if w not in lexicon]
                if missing:
                    log.append(
                        "note",
                        text=f"unsynthesizable phrase {phrase!r}: {missing} not in lexicon",
                        t=t,
                    )
                    continue
                t = _simulate_phrase(
                    log, phrase, words, block, variant, config, geometry,
                    block_params, lexicon, display_candidates, rng, t,
                )
        t += 1000.0
    return log


def _simulate_phrase(
    log, phrase, words, block, variant, config, geometry, params, lexicon,
    display_candidates, rng, t,
):
    log.append("phrase-start", target=phrase, block=block, t=t)
    decoder = WordDecoder(config, geometry)
    composer = Composer(lexicon)
    for word in words:
        traces = synthesize_traces(
            word, variant, geometry, params, config=config, t0=t, rng=rng
        )
        for trace in traces:
            for j, sample in enumerate(trace.samples):
                kind = "touch-down" if j == 0 else "touch-move"
                log.append(kind, x=sample.x, y=sample.y, t=sample.t)
                for em in decoder.touch(sample):
                    log.append("emission", digit=em.digit, cause=em.cause.value, t=em.t)
                    composer.append_emission(em)
            decoder.lift()
            log.append("touch-up", x=trace.up.x, y=trace.up.y, t=trace.up.t)
            t = trace.up.t + 150.0
        # Show enough of the candidate list to include the target word.
        ranked = [c.word for c in composer.candidates()]
        if word not in ranked:
            # Decoding diverged from the word's code; skip the commit so the
            # log stays well-formed (surfaces as WER downstream).
            log.append("note", text=f"no candidate {word!r} for code {composer.code}", t=t)
            decoder.reset_word()
            composer.buffer.clear()
            continue
        shown = ranked[: max(display_candidates, ranked.index(word) + 1)]
        t += 300.0  # selection pause
        log.append("candidates", words=shown, t=t)
        log.append("commit", word=word, t=t)
        composer.commit(word)
        decoder.reset_word()
        t += 100.0
    log.append("phrase-end", t=t)
    return t + 500.0
