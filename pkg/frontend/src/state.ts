/** Pure view-model for the study client.
 *
 * Holds everything the UI displays and is updated exclusively from server
 * messages, so the client can never disagree with the decoding service.
 * Rendering layers read this state after each message batch; nothing here
 * touches the DOM.
 */

import { Geometry } from './geometry.js';
import type { PhraseState, ServerMessage, SessionStarted, Variant } from './protocol.js';

export interface EmissionView {
  digit: number;
  effectiveDigit: number;
  cause: string;
  t: number;
}

export class StudyState {
  readonly sessionId: string;
  readonly variant: Variant;
  readonly geometry: Geometry;
  readonly practiceDurationS: number;

  phrase: PhraseState;
  emissions: EmissionView[] = [];
  candidates: string[] = [];
  code: number[] = [];
  transcript = '';
  /** Letters mirrored on key 1; empty when key 1 is inert or nothing typed. */
  key1Label = '';
  complete = false;
  logHandle: string | null = null;

  constructor(started: SessionStarted) {
    this.sessionId = started.session_id;
    this.variant = started.variant;
    this.geometry = new Geometry(started.geometry);
    this.practiceDurationS = started.practice_duration_s;
    this.phrase = started.phrase_state;
  }

  apply(msg: ServerMessage): void {
    switch (msg.type) {
      case 'emission-notify':
        this.emissions.push({
          digit: msg.digit,
          effectiveDigit: msg.effective_digit,
          cause: msg.cause,
          t: msg.t,
        });
        if (this.variant === 'enhanced-key-1') {
          this.key1Label = this.geometry.letters(msg.effective_digit);
        }
        break;
      case 'candidates-update':
        this.candidates = msg.words;
        this.code = msg.code;
        if (msg.code.length === 0) {
          this.key1Label = '';
        }
        break;
      case 'transcript-update':
        this.transcript = msg.transcript;
        break;
      case 'phrase-state':
        this.phrase = {
          target: msg.target,
          block: msg.block,
          phrase_index: msg.phrase_index,
          phrase_count: msg.phrase_count,
        };
        this.emissions = [];
        this.candidates = [];
        this.code = [];
        this.transcript = '';
        this.key1Label = '';
        break;
      case 'session-complete':
      case 'session-end-ack':
        this.complete = true;
        this.logHandle = msg.log_handle;
        break;
    }
  }

  applyAll(messages: ServerMessage[]): void {
    for (const msg of messages) {
      this.apply(msg);
    }
  }
}

/** Countdown gating the formal task behind a fixed practice period. */
export class PracticeGate {
  private startedAt: number | null = null;

  constructor(readonly durationMs: number) {}

  start(nowMs: number): void {
    this.startedAt = nowMs;
  }

  remainingMs(nowMs: number): number {
    if (this.startedAt === null) {
      return this.durationMs;
    }
    return Math.max(0, this.durationMs - (nowMs - this.startedAt));
  }

  unlocked(nowMs: number): boolean {
    return this.remainingMs(nowMs) === 0;
  }
}
