/** HTTP transport for the study-service protocol.
 *
 * Messages are serialized in order.  On a network failure the failed message
 * and everything behind it stay in a local buffer and are retried on the
 * next send or an explicit flush, so a dropped connection pauses the session
 * instead of losing events.
 */

import type {
  ClientMessage,
  ServerMessage,
  SessionStartRequest,
  SessionStarted,
} from './protocol.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ProtocolError extends Error {
  constructor(readonly status: number, detail: string) {
    super(detail);
    this.name = 'ProtocolError';
  }
}

export class SessionClient {
  private readonly fetchImpl: FetchLike;
  private sessionId: string | null = null;
  private pending: ClientMessage[] = [];
  private draining = false;

  constructor(readonly baseUrl: string, fetchImpl?: FetchLike) {
    this.fetchImpl = fetchImpl ?? ((url, init) => fetch(url, init));
  }

  get bufferedCount(): number {
    return this.pending.length;
  }

  async start(request: SessionStartRequest): Promise<SessionStarted> {
    const doc = await this.post('/sessions', request);
    this.sessionId = (doc as SessionStarted).session_id;
    return doc as SessionStarted;
  }

  /** Send one message, first draining anything buffered from earlier
   * failures.  Returns the server messages for every message delivered in
   * this call, in order. */
  async send(msg: ClientMessage): Promise<ServerMessage[]> {
    if (this.sessionId === null) {
      throw new Error('send() before start()');
    }
    this.pending.push(msg);
    return this.flush();
  }

  /** Retry buffered messages; stops at the first failure. */
  async flush(): Promise<ServerMessage[]> {
    if (this.draining) {
      return [];
    }
    this.draining = true;
    const received: ServerMessage[] = [];
    try {
      while (this.pending.length > 0) {
        const next = this.pending[0];
        let doc: unknown;
        try {
          doc = await this.post(`/sessions/${this.sessionId}/messages`, next);
        } catch (err) {
          if (err instanceof ProtocolError) {
            // The server understood and rejected the message; drop it.
            this.pending.shift();
          }
          throw err;
        }
        this.pending.shift();
        received.push(...(doc as { messages: ServerMessage[] }).messages);
      }
    } finally {
      this.draining = false;
    }
    return received;
  }

  async fetchLog(handle: string): Promise<string> {
    const resp = await this.fetchImpl(`${this.baseUrl}/logs/${handle}`);
    if (!resp.ok) {
      throw new ProtocolError(resp.status, await resp.text());
    }
    return resp.text();
  }

  private async post(path: string, body: unknown): Promise<unknown> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      throw new ProtocolError(resp.status, await resp.text());
    }
    return resp.json();
  }
}
