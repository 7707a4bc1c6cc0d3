import { describe, expect, test } from "vitest";

import { ApiClient, FetchLike } from "../src/api";

describe("ApiClient", () => {
  test("posts JSON under the configured base URL", async () => {
    const calls: Array<{ url: string; body: string }> = [];
    const fetchFn: FetchLike = (url, init) => {
      calls.push({ url, body: init.body });
      return Promise.resolve({ status: 200, text: () => Promise.resolve('{"ok":true}') });
    };
    const client = new ApiClient("http://example.test/api/v1", fetchFn);
    const res = await client.post("il", { kind: "v2", R: 0.5 });

    expect(calls).toHaveLength(1);
    expect(calls[0].url).toBe("http://example.test/api/v1/il");
    expect(JSON.parse(calls[0].body)).toEqual({ kind: "v2", R: 0.5 });
    expect(res.status).toBe(200);
    expect(res.json).toEqual({ ok: true });
    expect(res.raw).toBe('{"ok":true}');
  });

  test("keeps the raw text when the body is not JSON", async () => {
    const fetchFn: FetchLike = () =>
      Promise.resolve({ status: 502, text: () => Promise.resolve("Bad Gateway") });
    const client = new ApiClient("/api/v1", fetchFn);
    const res = await client.post("il", {});

    expect(res.status).toBe(502);
    expect(res.json).toBeNull();
    expect(res.raw).toBe("Bad Gateway");
  });
});
