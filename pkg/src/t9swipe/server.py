"""HTTP service exposing the study-client protocol.

The browser client never decodes gestures itself: it streams raw pointer
events (in physical millimeters) and receives emission, candidate, and
transcript updates back.  All typing activity is recorded server-side in the
same `.t9log` format the simulator writes, so a completed client session can
be replayed and analyzed with the rest of the toolkit.

Protocol (JSON over HTTP):

  POST /sessions                     {"type": "session-start", ...}
  POST /sessions/{id}/messages       one client message; the response body is
                                     {"messages": [...]} with server messages
  GET  /logs/{handle}                the finished `.t9log`

Client messages: pointer-event, commit, delete, phrase-advance, session-end.
Server messages: emission-notify, candidates-update, transcript-update,
phrase-state, session-complete, session-end-ack.
"""

from __future__ import annotations

import uuid
from dataclasses import replace

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse

from .decoder import DecoderConfig, TouchSample, Variant, WordDecoder
from .errors import T9Error
from .layout import KeyboardGeometry
from .predictor import Composer, Lexicon
from .session import SessionLog, sample_phrases


class _LiveSession:
    """One participant typing one keyboard variant."""

    def __init__(
        self,
        lexicon: Lexicon,
        geometry: KeyboardGeometry,
        config: DecoderConfig,
        phrases: list[str],
        phrases_per_block: int,
        participant: str,
        display_candidates: int,
    ):
        self.id = uuid.uuid4().hex[:12]
        self.lexicon = lexicon
        self.geometry = geometry
        self.config = config
        self.phrases = phrases
        self.phrases_per_block = phrases_per_block
        self.display_candidates = display_candidates
        self.phrase_index = 0
        self.decoder = WordDecoder(config, geometry)
        self.composer = Composer(lexicon, display_candidates)
        self.log = SessionLog.new(
            geometry, config, lexicon, participant_id=participant,
            metadata={"generator": "study-client"},
        )
        self.log.append("variant-start", variant=config.variant.value, t=0.0)
        self.finished = False
        self._start_phrase(t=0.0)

    def _block_of(self, index: int) -> int:
        return index // self.phrases_per_block + 1

    def _start_phrase(self, t: float) -> dict:
        target = self.phrases[self.phrase_index]
        self.log.append(
            "phrase-start", target=target, block=self._block_of(self.phrase_index), t=t
        )
        self.decoder = WordDecoder(self.config, self.geometry)
        self.composer = Composer(self.lexicon, self.display_candidates)
        return {
            "type": "phrase-state",
            "target": target,
            "block": self._block_of(self.phrase_index),
            "phrase_index": self.phrase_index,
            "phrase_count": len(self.phrases),
        }

    def _candidates_update(self) -> dict:
        words = [c.word for c in self.composer.candidates(k=self.display_candidates)]
        return {
            "type": "candidates-update",
            "words": words,
            "code": list(self.composer.code),
        }

    def handle(self, msg: dict) -> list[dict]:
        if self.finished:
            raise T9Error("session already ended")
        kind = msg.get("type")
        if kind == "pointer-event":
            return self._on_pointer(msg)
        if kind == "commit":
            return self._on_commit(msg)
        if kind == "delete":
            self.log.append("delete", t=float(msg.get("t", 0.0)))
            self.composer.delete_keystroke()
            self.decoder.set_last_effective(
                self.composer.buffer[-1] if self.composer.buffer else None
            )
            return [self._candidates_update()]
        if kind == "phrase-advance":
            return self._on_phrase_advance(msg)
        if kind == "session-end":
            self.log.append("phrase-end", t=float(msg.get("t", 0.0)))
            self.finished = True
            return [{"type": "session-end-ack", "log_handle": self.id}]
        raise T9Error(f"unknown message type {kind!r}")

    def _on_pointer(self, msg: dict) -> list[dict]:
        x, y, t = float(msg["x"]), float(msg["y"]), float(msg["t"])
        pkind = msg["kind"]
        out: list[dict] = []
        if pkind == "down":
            self.log.append("touch-down", x=x, y=y, t=t)
            emissions = self.decoder.touch(TouchSample(x, y, t))
        elif pkind == "move":
            self.log.append("touch-move", x=x, y=y, t=t)
            emissions = self.decoder.touch(TouchSample(x, y, t))
        elif pkind == "up":
            self.log.append("touch-up", x=x, y=y, t=t)
            emissions = self.decoder.lift()
        else:
            raise T9Error(f"unknown pointer kind {pkind!r}")
        for em in emissions:
            self.log.append("emission", digit=em.digit, cause=em.cause.value, t=em.t)
            self.composer.append_emission(em)
            out.append(
                {
                    "type": "emission-notify",
                    "digit": em.digit,
                    "cause": em.cause.value,
                    "t": em.t,
                    "effective_digit": self.composer.buffer[-1],
                }
            )
        if emissions:
            out.append(self._candidates_update())
        return out

    def _on_commit(self, msg: dict) -> list[dict]:
        word = msg["word"]
        t = float(msg.get("t", 0.0))
        ranked = [c.word for c in self.composer.candidates()]
        if word not in ranked:
            raise T9Error(f"{word!r} is not in the current candidate list")
        shown = ranked[: max(self.display_candidates, ranked.index(word) + 1)]
        self.log.append("candidates", words=shown, t=t)
        self.log.append("commit", word=word, t=t)
        self.composer.commit(word)
        self.decoder.reset_word()
        return [
            {"type": "transcript-update", "transcript": self.composer.transcript},
            self._candidates_update(),
        ]

    def _on_phrase_advance(self, msg: dict) -> list[dict]:
        t = float(msg.get("t", 0.0))
        self.log.append("phrase-end", t=t)
        self.phrase_index += 1
        if self.phrase_index >= len(self.phrases):
            self.finished = True
            return [{"type": "session-complete", "log_handle": self.id}]
        return [self._start_phrase(t)]


def create_app(
    lexicon: Lexicon,
    phrase_set: list[str],
    geometry: KeyboardGeometry | None = None,
    base_config: DecoderConfig | None = None,
    display_candidates: int = 5,
) -> FastAPI:
    geometry = geometry or KeyboardGeometry()
    base_config = base_config or DecoderConfig()
    app = FastAPI(title="t9swipe study service")
    sessions: dict[str, _LiveSession] = {}
    finished_logs: dict[str, SessionLog] = {}

    @app.post("/sessions")
    def session_start(msg: dict):
        try:
            variant = Variant(msg.get("variant", "conventional"))
            blocks = int(msg.get("blocks", 4))
            per_block = int(msg.get("phrases_per_block", 5))
            n = blocks * per_block
            phrases = msg.get("phrases") or sample_phrases(
                phrase_set, n, seed=int(msg.get("seed", 0))
            )
            sess = _LiveSession(
                lexicon=lexicon,
                geometry=geometry,
                config=replace(base_config, variant=variant),
                phrases=phrases,
                phrases_per_block=per_block,
                participant=str(msg.get("participant", "anon")),
                display_candidates=display_candidates,
            )
        except T9Error as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        sessions[sess.id] = sess
        return {
            "type": "session-started",
            "session_id": sess.id,
            "variant": variant.value,
            "geometry": geometry.to_json_dict(),
            "practice_duration_s": float(msg.get("practice_duration_s", 180.0)),
            "phrase_state": {
                "target": sess.phrases[0],
                "block": 1,
                "phrase_index": 0,
                "phrase_count": len(sess.phrases),
            },
        }

    @app.post("/sessions/{session_id}/messages")
    def session_message(session_id: str, msg: dict):
        sess = sessions.get(session_id)
        if sess is None:
            raise HTTPException(status_code=404, detail="no such session")
        try:
            out = sess.handle(msg)
        except T9Error as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        if sess.finished:
            finished_logs[sess.id] = sess.log
            del sessions[sess.id]
        return {"messages": out}

    @app.get("/logs/{handle}", response_class=PlainTextResponse)
    def get_log(handle: str):
        log = finished_logs.get(handle)
        if log is None:
            raise HTTPException(status_code=404, detail="no such log")
        return log.serialize()

    return app
