import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";
import { SequenceGate } from "../src/state";
import {
  FIXTURE_TALKS,
  FixtureServer,
  installFixtureFetch,
} from "./fixture-server";

let server: FixtureServer;

beforeEach(() => {
  server = installFixtureFetch();
});

afterEach(() => {
  server.restore();
});

describe("ApiClient", () => {
  it("returns the talk list exactly as served", async () => {
    const api = new ApiClient();
    await expect(api.talks()).resolves.toEqual(FIXTURE_TALKS);
    expect(server.calls).toEqual(["/api/talks"]);
  });

  it("shares one fetch between concurrent requests for the same path", async () => {
    const api = new ApiClient();
    const [first, second] = await Promise.all([
      api.talkDetail(0),
      api.talkDetail(0),
    ]);
    expect(first).toEqual(second);
    expect(server.calls).toEqual(["/api/talks/0?n=10"]);

    // After settling, the path is fetchable again.
    await api.talkDetail(0);
    expect(server.calls).toHaveLength(2);
  });

  it("does not conflate different paths", async () => {
    const api = new ApiClient();
    await Promise.all([api.talkDetail(0), api.talkDetail(1)]);
    expect(server.calls).toHaveLength(2);
  });

  it("raises ApiError carrying the served code and message", async () => {
    const api = new ApiClient();
    const failure = api.talkDetail(99);
    await expect(failure).rejects.toBeInstanceOf(ApiError);
    await failure.catch((error: ApiError) => {
      expect(error.status).toBe(404);
      expect(error.code).toBe("not_found");
      expect(error.message).toContain("99");
    });
  });

  it("percent-encodes search queries", async () => {
    const api = new ApiClient();
    await api.search("the brain?");
    expect(server.calls).toEqual(["/api/search?q=the%20brain%3F"]);
  });

  it("finds titles case-insensitively through the fixture", async () => {
    const api = new ApiClient();
    const hits = await api.search("BRAIN");
    expect(hits.map((talk) => talk.title)).toEqual([
      "3 ways the brain creates meaning",
    ]);
  });

  it("fetches neighbor stars with the requested width", async () => {
    const api = new ApiClient();
    const star = await api.neighbors(0, 2);
    expect(star.nodes.map((node) => node.id)).toEqual([0, 2, 4]);
    expect(star.links).toHaveLength(2);
    expect(server.calls).toEqual(["/api/talks/0/neighbors?n=2"]);
  });
});

describe("SequenceGate against slow responses", () => {
  it("discards a response that arrives after a newer request", async () => {
    const api = new ApiClient();
    const gate = new SequenceGate();
    const applied: number[] = [];

    const release = server.hold("/api/talks/0");
    const slowToken = gate.next();
    const slow = api.talkDetail(0).then((detail) => {
      if (gate.isCurrent(slowToken)) applied.push(detail.meta.id);
    });

    const fastToken = gate.next();
    const fast = await api.talkDetail(1);
    if (gate.isCurrent(fastToken)) applied.push(fast.meta.id);

    release();
    await slow;

    // Only the newest request's payload was applied.
    expect(applied).toEqual([1]);
  });
});
