"""Streaming state machines turning raw touch samples into keystrokes.

Three keyboard variants share one crossing-based decoder core:

* conventional -- a keystroke is emitted on initial contact and on every
  entry into a different key.  Repeating the key under the finger requires
  lifting and re-tapping it, or dwelling on it continuously.
* enhanced-key-1 -- additionally, entering key 1 emits a duplicate of the
  most recent keystroke of the current word, so repeats stay in one stroke.
* wiggle -- additionally, zig-zagging inside the current key (a threshold
  number of swipe direction changes) re-emits that key.

Key 1 carries no letters; outside the enhanced variant it is inert.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import MalformedTraceError, NormalizationError, T9Error
from .layout import KeyboardGeometry, KeySequence


class Variant(str, Enum):
    CONVENTIONAL = "conventional"
    ENHANCED_KEY1 = "enhanced-key-1"
    WIGGLE = "wiggle"


class Cause(str, Enum):
    INITIAL_CONTACT = "initial-contact"
    KEY_ENTRY = "key-entry"
    DWELL_REPEAT = "dwell-repeat"
    LIFT_RETAP = "lift-retap"
    WIGGLE_REPEAT = "wiggle-repeat"
    KEY1_DUPLICATE = "key1-duplicate"


@dataclass(frozen=True)
class TouchSample:
    x: float
    y: float
    t: float  # milliseconds


@dataclass(frozen=True)
class GestureTrace:
    """One touch-down .. touch-up stroke."""

    samples: tuple[TouchSample, ...]

    def __post_init__(self):
        if not self.samples:
            raise T9Error("a trace needs at least one sample")

    @property
    def down(self) -> TouchSample:
        return self.samples[0]

    @property
    def up(self) -> TouchSample:
        return self.samples[-1]


@dataclass(frozen=True)
class KeystrokeEmission:
    digit: int
    cause: Cause
    t: float


@dataclass(frozen=True)
class DecoderConfig:
    variant: Variant = Variant.CONVENTIONAL
    dwell_repeat_ms: float = 500.0
    direction_change_threshold: int = 3
    jitter_epsilon: float = 0.5

    def __post_init__(self):
        if self.direction_change_threshold < 1:
            raise T9Error("direction change threshold must be >= 1")
        if self.dwell_repeat_ms <= 0:
            raise T9Error("dwell repeat time must be positive")
        if self.jitter_epsilon < 0:
            raise T9Error("jitter epsilon must be non-negative")

    def to_json_dict(self) -> dict:
        return {
            "variant": self.variant.value,
            "dwell_repeat_ms": self.dwell_repeat_ms,
            "direction_change_threshold": self.direction_change_threshold,
            "jitter_epsilon": self.jitter_epsilon,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "DecoderConfig":
        return cls(
            variant=Variant(doc["variant"]),
            dwell_repeat_ms=doc.get("dwell_repeat_ms", 500.0),
            direction_change_threshold=doc.get("direction_change_threshold", 3),
            jitter_epsilon=doc.get("jitter_epsilon", 0.5),
        )


class _WiggleCounter:
    """Counts swipe direction changes inside one key.

    A direction change is a sign flip of the per-step displacement along the
    X or the Y axis.  Steps with axis displacement below ``epsilon`` are
    ignored on that axis, and a direction only registers once two significant
    steps agree on it -- a single step can be a pure sensor-noise excursion,
    but sustained movement cannot.  Each axis keeps its own count: a
    deliberate zig-zag reverses one axis repeatedly, whereas a path corner
    plus noise spreads single flips across both axes.
    """

    def __init__(self, epsilon: float):
        self.epsilon = epsilon
        self._flips = {"x": 0, "y": 0}
        self._sign = {"x": 0, "y": 0}
        self._pending = {"x": 0, "y": 0}

    def step(self, dx: float, dy: float) -> None:
        for axis, d in (("x", dx), ("y", dy)):
            if abs(d) < self.epsilon:
                continue
            sign = 1 if d > 0 else -1
            if sign == self._sign[axis]:
                self._pending[axis] = 0
                continue
            if sign == self._pending[axis]:
                if self._sign[axis]:
                    self._flips[axis] += 1
                self._sign[axis] = sign
                self._pending[axis] = 0
            else:
                self._pending[axis] = sign

    @property
    def flips(self) -> int:
        return max(self._flips.values())

    def reset_count(self) -> None:
        # Sign memory survives: a continued zig-zag keeps flipping from its
        # last direction, so runs of repeats chain naturally.
        self._flips = {"x": 0, "y": 0}


class WordDecoder:
    """Decoder state for one word attempt; may span several traces.

    Feed samples with :meth:`touch`, close a trace with :meth:`lift`, and
    call :meth:`reset_word` between words.  Each call returns the emissions
    it produced, in order.
    """

    def __init__(self, config: DecoderConfig, geometry: KeyboardGeometry | None = None):
        self.config = config
        self.geometry = geometry or KeyboardGeometry()
        self.warnings: list[str] = []
        self.reset_word()

    def reset_word(self) -> None:
        self._last_effective: int | None = None
        self._in_trace = False
        self._current_key: int | None = None
        self._last_t: float | None = None
        self._dwell_anchor: float | None = None
        self._prev_pos: tuple[float, float] | None = None
        self._wiggle = _WiggleCounter(self.config.jitter_epsilon)

    @property
    def last_effective_digit(self) -> int | None:
        """Digit a key-1 entry would duplicate right now."""
        return self._last_effective

    def set_last_effective(self, digit: int | None) -> None:
        """Rewind the duplication target, e.g. after a delete."""
        self._last_effective = digit

    def touch(self, sample: TouchSample) -> list[KeystrokeEmission]:
        if not self._in_trace:
            self._in_trace = True
            self._current_key = None
            self._last_t = None
        if self._last_t is not None and sample.t < self._last_t:
            raise MalformedTraceError(
                f"timestamp {sample.t} before {self._last_t} within a trace"
            )
        self._last_t = sample.t

        key = self.geometry.key_at(sample.x, sample.y)
        if key is None:
            # Out-of-bounds samples never emit and never advance the state.
            return []

        if self._current_key is None:
            return self._on_contact(key, sample)
        if key != self._current_key:
            return self._on_entry(key, sample)
        return self._on_stay(sample)

    def lift(self) -> list[KeystrokeEmission]:
        self._in_trace = False
        self._current_key = None
        self._dwell_anchor = None
        self._prev_pos = None
        return []

    def decode_trace(self, trace: GestureTrace) -> list[KeystrokeEmission]:
        out = []
        for s in trace.samples:
            out.extend(self.touch(s))
        out.extend(self.lift())
        return out

    # -- transitions ------------------------------------------------------

    def _enter_key(self, key: int, sample: TouchSample) -> None:
        self._current_key = key
        self._dwell_anchor = sample.t
        self._prev_pos = (sample.x, sample.y)
        self._wiggle = _WiggleCounter(self.config.jitter_epsilon)

    def _emit(self, digit: int, cause: Cause, t: float) -> KeystrokeEmission:
        if digit != 1:
            self._last_effective = digit
        return KeystrokeEmission(digit=digit, cause=cause, t=t)

    def _on_contact(self, key: int, sample: TouchSample) -> list[KeystrokeEmission]:
        self._enter_key(key, sample)
        if key == 1:
            return self._key1(sample)
        if self._last_effective == key:
            return [self._emit(key, Cause.LIFT_RETAP, sample.t)]
        return [self._emit(key, Cause.INITIAL_CONTACT, sample.t)]

    def _on_entry(self, key: int, sample: TouchSample) -> list[KeystrokeEmission]:
        self._enter_key(key, sample)
        if key == 1:
            return self._key1(sample)
        return [self._emit(key, Cause.KEY_ENTRY, sample.t)]

    def _key1(self, sample: TouchSample) -> list[KeystrokeEmission]:
        if self.config.variant is not Variant.ENHANCED_KEY1:
            return []
        if self._last_effective is None:
            self.warnings.append(
                f"key 1 touched at t={sample.t} with nothing to duplicate"
            )
            return []
        return [self._emit(1, Cause.KEY1_DUPLICATE, sample.t)]

    def _on_stay(self, sample: TouchSample) -> list[KeystrokeEmission]:
        out = []
        key = self._current_key
        assert key is not None
        if key != 1:
            if (
                self.config.variant is Variant.CONVENTIONAL
                and self._dwell_anchor is not None
                and sample.t - self._dwell_anchor >= self.config.dwell_repeat_ms
            ):
                out.append(self._emit(key, Cause.DWELL_REPEAT, sample.t))
                self._dwell_anchor = sample.t
            if self.config.variant is Variant.WIGGLE:
                px, py = self._prev_pos
                self._wiggle.step(sample.x - px, sample.y - py)
                if self._wiggle.flips >= self.config.direction_change_threshold:
                    out.append(self._emit(key, Cause.WIGGLE_REPEAT, sample.t))
                    self._wiggle.reset_count()
        self._prev_pos = (sample.x, sample.y)
        return out


def decode_word(
    traces: list[GestureTrace],
    config: DecoderConfig,
    geometry: KeyboardGeometry | None = None,
) -> list[KeystrokeEmission]:
    """Batch-decode the traces of one word attempt."""
    dec = WordDecoder(config, geometry)
    out = []
    for trace in traces:
        out.extend(dec.decode_trace(trace))
    return out


def normalize_sequence(
    emissions: list[KeystrokeEmission] | list[int],
) -> KeySequence:
    """Replace each key-1 duplicate with the digit it repeats.

    Accepts either emissions or bare digits; the result contains digits 2-9
    only and is what error classification compares against the target code.
    """
    out: list[int] = []
    for e in emissions:
        digit = e.digit if isinstance(e, KeystrokeEmission) else e
        if digit == 1:
            if not out:
                raise NormalizationError("leading key-1 emission has no predecessor")
            out.append(out[-1])
        else:
            out.append(digit)
    return tuple(out)
