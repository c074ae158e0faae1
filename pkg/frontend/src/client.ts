// HTTP client for the session service: JSON commands plus the SSE
// subscription feeding an EventMailbox.

import { EventMailbox } from "./mailbox.js";
import { parseEventLine } from "./protocol.js";

export interface CreateSessionResult {
  session_id: string;
  status: Record<string, unknown>;
  bounds: Record<string, unknown>;
}

export class SessionClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async post<T>(endpoint: string, body: unknown): Promise<T> {
    const resp = await this.fetchImpl(`${this.baseUrl}/${endpoint}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!resp.ok) {
      const detail = await resp
        .json()
        .then((d: { detail?: string }) => d.detail ?? resp.statusText)
        .catch(() => resp.statusText);
      throw new Error(`${endpoint}: ${detail}`);
    }
    return (await resp.json()) as T;
  }

  createSession(instance: string, config: Record<string, unknown>): Promise<CreateSessionResult> {
    return this.post("session.create", { instance, config });
  }

  setReference(sessionId: string, r: number[]): Promise<{ ok: boolean }> {
    return this.post("session.setReference", { session_id: sessionId, r, active: true });
  }

  start(sessionId: string): Promise<unknown> {
    return this.post("session.start", { session_id: sessionId });
  }

  pause(sessionId: string): Promise<unknown> {
    return this.post("session.pause", { session_id: sessionId });
  }

  accept(sessionId: string, selection: string): Promise<unknown> {
    return this.post("session.accept", { session_id: sessionId, selection });
  }

  /**
   * Consume the SSE stream into the mailbox until it closes or the signal
   * aborts. Malformed lines are skipped (the stream must survive them).
   */
  async subscribe(
    sessionId: string,
    mailbox: EventMailbox,
    signal?: AbortSignal,
  ): Promise<void> {
    const url = `${this.baseUrl}/session.subscribe?session_id=${encodeURIComponent(sessionId)}`;
    const resp = await this.fetchImpl(url, { signal });
    if (!resp.ok || resp.body === null) {
      throw new Error(`session.subscribe: ${resp.statusText}`);
    }
    const reader = resp.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    for (;;) {
      const { done, value } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      let idx;
      while ((idx = buffer.indexOf("\n\n")) >= 0) {
        const frame = buffer.slice(0, idx);
        buffer = buffer.slice(idx + 2);
        for (const line of frame.split("\n")) {
          if (!line.startsWith("data: ")) continue;
          try {
            mailbox.put(parseEventLine(line.slice("data: ".length)));
          } catch {
            // tolerate malformed frames
          }
        }
      }
    }
  }
}

/**
 * Drive state updates from the mailbox at a bounded frame rate. Returns a
 * stop function. `apply` receives each drained event in order.
 */
export function startApplyLoop(
  mailbox: EventMailbox,
  apply: (events: ReturnType<EventMailbox["drain"]>) => void,
  maxFps = 10,
  scheduler: { set: (fn: () => void, ms: number) => unknown; clear: (h: unknown) => void } = {
    set: (fn, ms) => setTimeout(fn, ms),
    clear: (h) => clearTimeout(h as Parameters<typeof clearTimeout>[0]),
  },
): () => void {
  const interval = 1000 / maxFps;
  let handle: unknown = null;
  let stopped = false;
  const tick = () => {
    if (stopped) return;
    if (mailbox.pending) {
      apply(mailbox.drain());
    }
    handle = scheduler.set(tick, interval);
  };
  handle = scheduler.set(tick, interval);
  return () => {
    stopped = true;
    if (handle !== null) scheduler.clear(handle);
  };
}
