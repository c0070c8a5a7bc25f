import { describe, expect, it } from 'vitest';

import type { ServerMessage } from '../src/protocol.js';
import { ProtocolError, SessionClient, type FetchLike } from '../src/transport.js';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

const STARTED = {
  type: 'session-started',
  session_id: 's1',
  variant: 'enhanced-key-1',
  geometry: {},
  practice_duration_s: 0,
  phrase_state: { target: 'go', block: 1, phrase_index: 0, phrase_count: 1 },
};

function makeClient(handler: (url: string, body: unknown) => Response | Error) {
  const posted: unknown[] = [];
  const fetchImpl: FetchLike = async (url, init) => {
    const body = init?.body ? JSON.parse(String(init.body)) : null;
    const out = handler(url, body);
    if (out instanceof Error) {
      throw out;
    }
    if (body) {
      posted.push(body);
    }
    return out;
  };
  return { client: new SessionClient('http://test', fetchImpl), posted };
}

describe('SessionClient', () => {
  it('delivers messages in order and returns server messages', async () => {
    const echo: ServerMessage = { type: 'transcript-update', transcript: 'x ' };
    const { client, posted } = makeClient((url) =>
      url.endsWith('/sessions') ? jsonResponse(STARTED) : jsonResponse({ messages: [echo] }),
    );
    await client.start({ type: 'session-start', variant: 'enhanced-key-1', participant: 'p' });
    const got = await client.send({ type: 'delete', t: 1 });
    expect(got).toEqual([echo]);
    expect(posted.map((m: any) => m.type)).toEqual(['session-start', 'delete']);
  });

  it('buffers events across a network failure and resends them in order', async () => {
    let offline = false;
    const { client, posted } = makeClient((url) => {
      if (url.endsWith('/sessions')) {
        return jsonResponse(STARTED);
      }
      if (offline) {
        return new TypeError('network down');
      }
      return jsonResponse({ messages: [] });
    });
    await client.start({ type: 'session-start', variant: 'enhanced-key-1', participant: 'p' });

    offline = true;
    await expect(client.send({ type: 'delete', t: 1 })).rejects.toThrow('network down');
    await expect(client.send({ type: 'delete', t: 2 })).rejects.toThrow('network down');
    expect(client.bufferedCount).toBe(2);

    offline = false;
    await client.flush();
    expect(client.bufferedCount).toBe(0);
    const ts = posted.filter((m: any) => m.type === 'delete').map((m: any) => m.t);
    expect(ts).toEqual([1, 2]);
  });

  it('drops a message the server rejects instead of retrying it forever', async () => {
    const { client } = makeClient((url, body: any) => {
      if (url.endsWith('/sessions')) {
        return jsonResponse(STARTED);
      }
      if (body?.type === 'commit') {
        return jsonResponse({ detail: 'not a candidate' }, 400);
      }
      return jsonResponse({ messages: [] });
    });
    await client.start({ type: 'session-start', variant: 'enhanced-key-1', participant: 'p' });
    await expect(
      client.send({ type: 'commit', word: 'zzz', t: 1 }),
    ).rejects.toBeInstanceOf(ProtocolError);
    expect(client.bufferedCount).toBe(0);
    await expect(client.send({ type: 'delete', t: 2 })).resolves.toEqual([]);
  });

  it('refuses to send before the session starts', async () => {
    const { client } = makeClient(() => jsonResponse({ messages: [] }));
    await expect(client.send({ type: 'delete', t: 0 })).rejects.toThrow('before start');
  });
});
