import { describe, expect, it } from 'vitest';

import type { SessionStarted, Variant } from '../src/protocol.js';
import { PracticeGate, StudyState } from '../src/state.js';
import { GEOMETRY_DOC } from './geometry.test.js';

function started(variant: Variant): SessionStarted {
  return {
    type: 'session-started',
    session_id: 'abc123',
    variant,
    geometry: GEOMETRY_DOC,
    practice_duration_s: 180,
    phrase_state: { target: 'go on', block: 1, phrase_index: 0, phrase_count: 4 },
  };
}

describe('StudyState key-1 mirror', () => {
  it('shows the last-entered key letters immediately after emission-notify', () => {
    const state = new StudyState(started('enhanced-key-1'));
    state.apply({
      type: 'emission-notify', digit: 7, cause: 'key-entry', t: 50, effective_digit: 7,
    });
    // Synchronous update: visible on the very next frame.
    expect(state.key1Label).toBe('pqrs');
  });

  it('keeps mirroring the repeated key through a key-1 duplicate', () => {
    const state = new StudyState(started('enhanced-key-1'));
    state.applyAll([
      { type: 'emission-notify', digit: 6, cause: 'key-entry', t: 0, effective_digit: 6 },
      { type: 'emission-notify', digit: 1, cause: 'key1-duplicate', t: 50, effective_digit: 6 },
    ]);
    expect(state.key1Label).toBe('mno');
  });

  it('stays blank under the conventional variant', () => {
    const state = new StudyState(started('conventional'));
    state.apply({
      type: 'emission-notify', digit: 7, cause: 'key-entry', t: 50, effective_digit: 7,
    });
    expect(state.key1Label).toBe('');
  });

  it('clears when the buffer empties', () => {
    const state = new StudyState(started('enhanced-key-1'));
    state.apply({
      type: 'emission-notify', digit: 7, cause: 'key-entry', t: 50, effective_digit: 7,
    });
    state.apply({ type: 'candidates-update', words: [], code: [] });
    expect(state.key1Label).toBe('');
  });
});

describe('StudyState session flow', () => {
  it('mirrors candidates, transcript, and phrase advances', () => {
    const state = new StudyState(started('enhanced-key-1'));
    state.applyAll([
      { type: 'emission-notify', digit: 2, cause: 'initial-contact', t: 0, effective_digit: 2 },
      { type: 'candidates-update', words: ['a', 'at'], code: [2] },
    ]);
    expect(state.candidates).toEqual(['a', 'at']);
    expect(state.code).toEqual([2]);
    expect(state.emissions).toHaveLength(1);

    state.apply({ type: 'transcript-update', transcript: 'a ' });
    expect(state.transcript).toBe('a ');

    state.apply({
      type: 'phrase-state', target: 'in no time', block: 1, phrase_index: 1, phrase_count: 4,
    });
    expect(state.phrase.target).toBe('in no time');
    expect(state.transcript).toBe('');
    expect(state.candidates).toEqual([]);
    expect(state.key1Label).toBe('');
  });

  it('records completion and the log handle', () => {
    const state = new StudyState(started('wiggle'));
    state.apply({ type: 'session-complete', log_handle: 'abc123' });
    expect(state.complete).toBe(true);
    expect(state.logHandle).toBe('abc123');
  });
});

describe('PracticeGate', () => {
  it('locks the formal task until the countdown expires', () => {
    const gate = new PracticeGate(180_000);
    expect(gate.unlocked(0)).toBe(false);
    gate.start(1_000);
    expect(gate.unlocked(1_000)).toBe(false);
    expect(gate.remainingMs(91_000)).toBe(90_000);
    expect(gate.unlocked(180_999)).toBe(false);
    expect(gate.unlocked(181_000)).toBe(true);
  });
});
