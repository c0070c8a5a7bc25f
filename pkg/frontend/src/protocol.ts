/** JSON message schema shared with the study service.
 *
 * The client never decodes gestures: it streams raw pointer events in
 * physical millimeters and mirrors whatever the service sends back.
 */

export type Variant = 'conventional' | 'enhanced-key-1' | 'wiggle';

export type PointerKind = 'down' | 'move' | 'up';

export interface GeometryDoc {
  width: number;
  height: number;
  rows: number;
  cols: number;
  gap: number;
  letter_map: Record<string, string>;
}

export interface SessionStartRequest {
  type: 'session-start';
  variant: Variant;
  participant: string;
  blocks?: number;
  phrases_per_block?: number;
  seed?: number;
  phrases?: string[];
  practice_duration_s?: number;
}

export interface PhraseState {
  target: string;
  block: number;
  phrase_index: number;
  phrase_count: number;
}

export interface SessionStarted {
  type: 'session-started';
  session_id: string;
  variant: Variant;
  geometry: GeometryDoc;
  practice_duration_s: number;
  phrase_state: PhraseState;
}

export type ClientMessage =
  | { type: 'pointer-event'; kind: PointerKind; x: number; y: number; t: number }
  | { type: 'commit'; word: string; t: number }
  | { type: 'delete'; t: number }
  | { type: 'phrase-advance'; t: number }
  | { type: 'session-end'; t: number };

export type ServerMessage =
  | { type: 'emission-notify'; digit: number; cause: string; t: number; effective_digit: number }
  | { type: 'candidates-update'; words: string[]; code: number[] }
  | { type: 'transcript-update'; transcript: string }
  | ({ type: 'phrase-state' } & PhraseState)
  | { type: 'session-complete'; log_handle: string }
  | { type: 'session-end-ack'; log_handle: string };
