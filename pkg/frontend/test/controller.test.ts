import { afterEach, describe, expect, test, vi } from "vitest";

import { ApiClient } from "../src/api";
import { ExplorerController } from "../src/controller";
import { DEFAULT_STATE, ExplorerState, buildRequest, requestKey } from "../src/state";
import { readoutHtml } from "../src/view";
import { FixtureHarness, RecordingSink } from "./harness";

const up20: ExplorerState = {
  ...DEFAULT_STATE,
  kind: "range",
  p0: 1,
  lowPct: 50,
  highPct: 150,
  movePct: 20,
};
const down20: ExplorerState = { ...up20, movePct: -20 };

function makeController(harness: FixtureHarness, sink: RecordingSink, debounceMs = 150) {
  return new ExplorerController(new ApiClient("/api/v1", harness.fetch), sink, debounceMs);
}

describe("ui round trip", () => {
  test("band sliders at [50%, 150%] with a +20% move render -1.91% verbatim from the cached response, and a delayed stale response never overwrites it", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    // slider state -> request -> response -> readout
    controller.submit(up20);
    await harness.settle();
    expect(sink.readouts).toHaveLength(1);
    expect(sink.profiles).toHaveLength(1);

    const shown = readoutHtml(sink.lastReadout.res, sink.lastReadout.state);
    expect(shown).toContain("-1.91%");
    expect(shown).toContain("-0.019122238183218905");

    // the displayed strings are substrings of the cached response
    const cached = controller.cache.get(requestKey(buildRequest(up20)));
    expect(cached).toBeDefined();
    expect(sink.lastReadout.res).toBe(cached);
    expect(cached!.raw).toContain("-1.91%");
    expect(cached!.raw).toContain("-0.019122238183218905");
    const text = (cached!.json as { result: { text: string } }).result.text;
    expect(text).toContain("[50%, 150%]  -1.91%");

    // delayed response: hold the -20% request, supersede it, then let it land
    harness.hold("table");
    controller.submit(down20);
    controller.submit(up20);
    harness.release("table");
    await harness.settle();

    // the stale -2.34% readout was discarded, the newer state won
    const rendered = sink.readouts.map((r) => readoutHtml(r.res, r.state));
    expect(rendered.some((html) => html.includes("-2.34%"))).toBe(false);
    expect(rendered[rendered.length - 1]).toContain("-1.91%");
    // the late response still warmed the cache, it just never rendered
    expect(controller.cache.get(requestKey(buildRequest(down20)))!.raw).toContain("-2.34%");
    expect(harness.maxInflight).toBe(1);

    console.log(
      "CRITERION 13: PASS - [50%, 150%] sliders with +20% move render -1.91% " +
        "verbatim from the cached response; delayed stale response suppressed",
    );
  });

  test("repeated states are served from the cache without new requests", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    controller.submit(up20);
    await harness.settle();
    expect(harness.requestLog).toHaveLength(2);

    controller.submit(up20);
    await harness.settle();
    expect(harness.requestLog).toHaveLength(2);
    expect(sink.readouts).toHaveLength(2);
    expect(sink.readouts[1].res).toBe(sink.readouts[0].res);
  });

  test("the profile cache is shared across moves that chart the same curve", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    controller.submit(up20);
    await harness.settle();
    controller.submit(down20);
    await harness.settle();

    // two table fetches, one profile fetch: the move is not a curve input
    const endpoints = harness.requestLog.map((r) => r.endpoint);
    expect(endpoints.filter((e) => e === "table")).toHaveLength(2);
    expect(endpoints.filter((e) => e === "profile")).toHaveLength(1);
    expect(sink.profiles).toHaveLength(2);
  });
});

describe("input handling", () => {
  afterEach(() => {
    vi.useRealTimers();
  });

  test("bursts of input debounce to a single request set", async () => {
    vi.useFakeTimers();
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    controller.onInput(down20);
    vi.advanceTimersByTime(100);
    controller.onInput(up20);
    vi.advanceTimersByTime(150);
    await harness.settle();

    // the superseded -20% state never produced a request
    expect(harness.requestLog).toHaveLength(2);
    expect(harness.requestLog[0].body.moves).toEqual([0.2]);
    expect(harness.maxInflight).toBe(1);
  });

  test("invalid states render form errors and send nothing", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    controller.submit({ ...up20, lowPct: 150, highPct: 50 });
    await harness.settle();

    expect(sink.formErrors).toHaveLength(1);
    expect(sink.formErrors[0].map((e) => e.field)).toContain("range");
    expect(harness.requestLog).toHaveLength(0);
    expect(sink.readouts).toHaveLength(0);
  });

  test("a valid submission clears the previous form errors", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    controller.submit({ ...up20, p0: -1 });
    controller.submit(up20);
    await harness.settle();

    expect(sink.formErrors).toHaveLength(2);
    expect(sink.formErrors[1]).toEqual([]);
  });
});

describe("failure handling", () => {
  test("an unparseable response raises a banner carrying the request id", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    harness.respondWith("table", "<html>proxy error</html>", 200);
    controller.submit(up20);
    await harness.settle();

    expect(sink.failures).toHaveLength(1);
    expect(sink.failures[0].message).toContain("malformed response");
    expect(sink.failures[0].requestId).toBe("ui-1");
    // the broken body was not cached
    expect(controller.cache.get(requestKey(buildRequest(up20)))).toBeUndefined();
  });

  test("a service error surfaces its message and status", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    harness.respondWith(
      "table",
      '{"error":{"code":"invalid_parameter","message":"p0 must be a number"}}',
      422,
    );
    controller.submit(up20);
    await harness.settle();

    expect(sink.failures).toHaveLength(1);
    expect(sink.failures[0].message).toContain("p0 must be a number");
    expect(sink.failures[0].message).toContain("422");
  });

  test("after a failure the next submission retries the request", async () => {
    const harness = new FixtureHarness();
    const sink = new RecordingSink();
    const controller = makeController(harness, sink);

    harness.respondWith("table", "garbage", 200);
    controller.submit(up20);
    await harness.settle();
    controller.submit(up20);
    await harness.settle();

    expect(sink.failures).toHaveLength(1);
    expect(sink.readouts).toHaveLength(1);
    const html = readoutHtml(sink.lastReadout.res, sink.lastReadout.state);
    expect(html).toContain("-1.91%");
  });
});
