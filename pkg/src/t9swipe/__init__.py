"""Gesture-typing engine and evaluation toolkit for 9-key keyboards."""

from .decoder import (
    Cause,
    DecoderConfig,
    GestureTrace,
    KeystrokeEmission,
    TouchSample,
    Variant,
    WordDecoder,
    decode_word,
    normalize_sequence,
)
from .layout import (
    LETTER_MAP,
    ConsecutiveStats,
    KeyboardGeometry,
    code_of,
    consecutive_same_key_stats,
)
from .metrics import (
    ErrorCounts,
    MetricsReport,
    PhraseResult,
    classify_errors,
    deletes_per_word,
    kspc,
    learnability,
    mwd,
    wer,
    wpm,
)
from .predictor import Candidate, CandidateOrigin, Composer, Lexicon, candidates
from .session import SessionLog, StudyPlan, counterbalance, replay, sample_phrases
from .simulator import SimParams, expected_gestures, simulate_session, synthesize_traces

__version__ = "0.1.0"
