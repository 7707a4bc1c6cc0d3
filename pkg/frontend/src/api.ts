/**
 * Thin client for the pool analytics JSON API.
 *
 * The only configuration is the base URL; every compute endpoint is a
 * POST of a JSON body under that prefix.  The raw response text is kept
 * alongside the parsed value because displayed numbers are sliced out
 * of the server's own bytes, never reformatted client-side.
 */

export interface ApiResponse {
  status: number;
  /** Exact response body as text. */
  raw: string;
  /** Parsed body, or null when the text is not valid JSON. */
  json: unknown;
}

/** Subset of fetch the client needs; tests substitute a canned version. */
export type FetchLike = (
  url: string,
  init: { method: string; headers: Record<string, string>; body: string },
) => Promise<{ status: number; text(): Promise<string> }>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "/api/v1",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  async post(endpoint: string, body: unknown): Promise<ApiResponse> {
    const res = await this.fetchFn(`${this.baseUrl}/${endpoint}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const raw = await res.text();
    let json: unknown = null;
    try {
      json = JSON.parse(raw);
    } catch {
      // leave json null; the caller shows an error banner
    }
    return { status: res.status, raw, json };
  }
}
