/**
 * Request scheduling between the form and the API.
 *
 * Form input is debounced, at most one request is ever in flight, and
 * every response is tagged with the sequence number of the state that
 * produced it.  A response whose sequence is older than the newest
 * submitted state is discarded before rendering, so a slow reply can
 * never overwrite what a newer input already put on screen.  Valid
 * responses are cached by request key and replayed without touching
 * the network.
 */

import { ApiClient } from "./api";
import {
  buildProfileRequest,
  buildRequest,
  ComputeRequest,
  ExplorerState,
  FieldError,
  requestKey,
  validateState,
} from "./state";

export type Panel = "readout" | "profile";

export interface CachedResponse {
  key: string;
  status: number;
  raw: string;
  json: unknown;
}

/** Output surface; the page binds these to DOM nodes, tests record them. */
export interface RenderSink {
  renderReadout(res: CachedResponse, state: ExplorerState): void;
  renderProfile(res: CachedResponse, state: ExplorerState): void;
  renderFormErrors(errors: FieldError[]): void;
  renderFailure(message: string, requestId: string): void;
}

interface Step {
  seq: number;
  panel: Panel;
  req: ComputeRequest;
  state: ExplorerState;
}

interface Envelope {
  request_id?: unknown;
  result?: unknown;
  error?: { message?: unknown };
}

function isUsable(res: { status: number; json: unknown }): boolean {
  return (
    res.status === 200 &&
    typeof res.json === "object" &&
    res.json !== null &&
    "result" in (res.json as Envelope)
  );
}

function describeFailure(res: CachedResponse): string {
  if (res.json === null) {
    return `malformed response (status ${res.status})`;
  }
  const message = (res.json as Envelope).error?.message;
  if (typeof message === "string") {
    return `${message} (status ${res.status})`;
  }
  return `unexpected response shape (status ${res.status})`;
}

export class ExplorerController {
  private seq = 0;
  private latestSeq = 0;
  private renderedSeq: Record<Panel, number> = { readout: 0, profile: 0 };
  private queue: Step[] = [];
  private inflight = false;
  private timer: ReturnType<typeof setTimeout> | null = null;
  readonly cache = new Map<string, CachedResponse>();

  constructor(
    private readonly api: ApiClient,
    private readonly sink: RenderSink,
    private readonly debounceMs = 150,
  ) {}

  /** Debounced entry point for live form input. */
  onInput(state: ExplorerState): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      this.submit(state);
    }, this.debounceMs);
  }

  /** Validate and queue the requests for a state snapshot. */
  submit(state: ExplorerState): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    const errors = validateState(state);
    if (errors.length > 0) {
      this.sink.renderFormErrors(errors);
      return;
    }
    this.sink.renderFormErrors([]);
    const seq = ++this.seq;
    this.latestSeq = seq;
    // a newer snapshot supersedes anything still queued
    this.queue = [
      { seq, panel: "readout", req: buildRequest(state), state },
      { seq, panel: "profile", req: buildProfileRequest(state), state },
    ];
    void this.pump();
  }

  private async pump(): Promise<void> {
    while (!this.inflight && this.queue.length > 0) {
      const step = this.queue.shift()!;
      const key = requestKey(step.req);
      const hit = this.cache.get(key);
      if (hit !== undefined) {
        this.deliver(step, hit);
        continue;
      }
      this.inflight = true;
      let cached: CachedResponse;
      try {
        const res = await this.api.post(step.req.endpoint, {
          ...step.req.body,
          request_id: requestIdFor(step.seq),
        });
        cached = { key, status: res.status, raw: res.raw, json: res.json };
      } catch (err) {
        this.inflight = false;
        if (step.seq >= this.latestSeq) {
          this.sink.renderFailure(String(err), requestIdFor(step.seq));
        }
        continue;
      }
      this.inflight = false;
      if (isUsable(cached)) {
        this.cache.set(key, cached);
      }
      this.deliver(step, cached);
    }
  }

  private deliver(step: Step, res: CachedResponse): void {
    if (step.seq < this.latestSeq) {
      return; // superseded input: discard the stale response
    }
    if (step.seq < this.renderedSeq[step.panel]) {
      return; // never overwrite output of a newer state
    }
    if (!isUsable(res)) {
      this.sink.renderFailure(describeFailure(res), requestIdFor(step.seq));
      return;
    }
    this.renderedSeq[step.panel] = step.seq;
    if (step.panel === "readout") {
      this.sink.renderReadout(res, step.state);
    } else {
      this.sink.renderProfile(res, step.state);
    }
  }
}

function requestIdFor(seq: number): string {
  return `ui-${seq}`;
}
