/** In-memory stand-in for the read-only HTTP API.
 *
 * installFixtureFetch() swaps globalThis.fetch for a router over a small
 * five-talk corpus, records every request path, and can hold responses
 * back so tests can force out-of-order completion.
 */

import type {
  CloudEntry,
  GraphDocument,
  NodeSummary,
  TalkDetail,
} from "../src/types";

export const FIXTURE_TALKS: NodeSummary[] = [
  {
    id: 1,
    title: "3 ways the brain creates meaning",
    speaker: "Tom Wujec",
    views: 1292208,
    sentiment_norm: 0.0,
    community: 1,
  },
  {
    id: 0,
    title: "Do schools kill creativity?",
    speaker: "Ken Robinson",
    views: 47227110,
    sentiment_norm: 1.0,
    community: 0,
  },
  {
    id: 3,
    title: "How great leaders inspire action",
    speaker: "Simon Sinek",
    views: 34309432,
    sentiment_norm: null,
    community: 1,
  },
  {
    id: 4,
    title: "My stroke of insight",
    speaker: "Jill Bolte Taylor",
    views: 21190883,
    sentiment_norm: 0.5,
    community: 0,
  },
  {
    id: 2,
    title: "The power of vulnerability",
    speaker: "Brené Brown",
    views: 31168150,
    sentiment_norm: 0.62,
    community: 0,
  },
];

const TALK_BY_ID = new Map(FIXTURE_TALKS.map((talk) => [talk.id, talk]));

export const TALK_URLS: Record<number, string> = {
  0: "https://example.org/talks/creativity",
  1: "https://example.org/talks/brain",
  2: "",
  3: "https://example.org/talks/leaders",
  4: "https://example.org/talks/stroke",
};

export const FULL_GRAPH: GraphDocument = {
  nodes: FIXTURE_TALKS,
  links: [
    { source: 0, target: 2, similarity: 0.91 },
    { source: 0, target: 4, similarity: 0.52 },
    { source: 1, target: 3, similarity: 0.47 },
    { source: 2, target: 4, similarity: 0.33 },
  ],
};

/** Per-talk neighbor lists, strongest first. */
const NEIGHBOR_SIMS: Record<number, Array<[number, number]>> = {
  0: [
    [2, 0.91],
    [4, 0.52],
    [3, 0.18],
  ],
  1: [
    [3, 0.47],
    [0, 0.12],
  ],
  2: [
    [0, 0.91],
    [4, 0.33],
  ],
  3: [
    [1, 0.47],
    [0, 0.18],
  ],
  4: [
    [0, 0.52],
    [2, 0.33],
  ],
};

function starGraph(center: number, n: number): GraphDocument {
  const pairs = (NEIGHBOR_SIMS[center] ?? []).slice(0, n);
  return {
    nodes: [
      TALK_BY_ID.get(center)!,
      ...pairs.map(([id]) => TALK_BY_ID.get(id)!),
    ],
    links: pairs.map(([id, similarity]) => ({
      source: center,
      target: id,
      similarity,
    })),
  };
}

/** 35 entries so the renderer's 30-term cap is exercised. */
function brainCloud(): CloudEntry[] {
  const entries: CloudEntry[] = [
    { word: "brain", weight: 4.2 },
    { word: "meaning", weight: 3.9 },
    { word: "image", weight: 3.1 },
  ];
  for (let i = 0; i < 32; i += 1) {
    entries.push({ word: `filler${i}`, weight: 2.5 - i * 0.05 });
  }
  return entries;
}

const CLOUDS: Record<number, CloudEntry[]> = {
  0: [
    { word: "creativity", weight: 5.1 },
    { word: "school", weight: 4.4 },
    { word: "education", weight: 3.6 },
    { word: "children", weight: 2.2 },
  ],
  1: brainCloud(),
  2: [
    { word: "vulnerability", weight: 4.8 },
    { word: "shame", weight: 4.1 },
    { word: "courage", weight: 2.9 },
  ],
  3: [
    { word: "leaders", weight: 4.5 },
    { word: "why", weight: 4.0 },
    { word: "believe", weight: 3.2 },
  ],
  4: [
    { word: "stroke", weight: 5.0 },
    { word: "hemisphere", weight: 4.2 },
    { word: "energy", weight: 3.0 },
  ],
};

const SENTIMENTS: Record<number, TalkDetail["sentiment"]> = {
  0: { score: 7.9, normalized: 1.0, matched_tokens: 180, total_tokens: 240, coverage: 0.75 },
  1: { score: 3.1, normalized: 0.0, matched_tokens: 95, total_tokens: 150, coverage: 95 / 150 },
  2: { score: 6.4, normalized: 0.62, matched_tokens: 210, total_tokens: 300, coverage: 0.7 },
  3: { score: null, normalized: null, matched_tokens: 0, total_tokens: 130, coverage: 0.0 },
  4: { score: 6.1, normalized: 0.5, matched_tokens: 160, total_tokens: 220, coverage: 160 / 220 },
};

export function fixtureDetail(id: number, n: number): TalkDetail | null {
  const talk = TALK_BY_ID.get(id);
  if (!talk) return null;
  return {
    meta: {
      id: talk.id,
      title: talk.title,
      speaker: talk.speaker,
      tags: ["fixture"],
      views: talk.views,
      url: TALK_URLS[id] ?? "",
    },
    sentiment: SENTIMENTS[id]!,
    wordcloud: CLOUDS[id]!,
    recommendations: (NEIGHBOR_SIMS[id] ?? [])
      .slice(0, n)
      .map(([recId, similarity]) => ({
        id: recId,
        title: TALK_BY_ID.get(recId)!.title,
        similarity,
      })),
  };
}

const META = {
  format_version: 1,
  fingerprint: "ab".repeat(32),
  n_talks: FIXTURE_TALKS.length,
  dim: 8,
  n_edges: FULL_GRAPH.links.length,
  edge_fraction: 0.2,
  n_communities: 2,
  modularity: 0.42,
  config: {},
};

interface Routed {
  status: number;
  body: unknown;
}

function ok(body: unknown): Routed {
  return { status: 200, body };
}

function apiError(status: number, code: string, message: string): Routed {
  return { status, body: { error: { code, message } } };
}

function route(path: string): Routed {
  const url = new URL(path, "http://fixture.test");
  const pathname = url.pathname;
  const params = url.searchParams;

  if (pathname === "/api/meta") return ok(META);
  if (pathname === "/api/talks") return ok(FIXTURE_TALKS);
  if (pathname === "/api/graph") return ok(FULL_GRAPH);

  if (pathname === "/api/search") {
    const raw = params.get("q");
    if (raw === null || raw === "") {
      return apiError(400, "bad_request", "q: field required");
    }
    const needle = raw.toLowerCase();
    const hits = FIXTURE_TALKS.map((talk) => ({
      talk,
      position: talk.title.toLowerCase().indexOf(needle),
    }))
      .filter((hit) => hit.position >= 0)
      .sort(
        (a, b) =>
          a.position - b.position ||
          (a.talk.title < b.talk.title ? -1 : a.talk.title > b.talk.title ? 1 : 0) ||
          a.talk.id - b.talk.id,
      )
      .map((hit) => hit.talk);
    return ok(hits);
  }

  const neighborsMatch = pathname.match(/^\/api\/talks\/(\d+)\/neighbors$/);
  if (neighborsMatch) {
    const id = Number(neighborsMatch[1]);
    if (!TALK_BY_ID.has(id)) {
      return apiError(404, "not_found", `no talk with id ${id}`);
    }
    const n = Number(params.get("n") ?? "10");
    return ok(starGraph(id, n));
  }

  const detailMatch = pathname.match(/^\/api\/talks\/(\d+)$/);
  if (detailMatch) {
    const id = Number(detailMatch[1]);
    const n = Number(params.get("n") ?? "10");
    const detail = fixtureDetail(id, n);
    if (detail === null) {
      return apiError(404, "not_found", `no talk with id ${id}`);
    }
    return ok(detail);
  }

  return apiError(404, "not_found", `no route for ${pathname}`);
}

export interface FixtureServer {
  /** Every request path, in arrival order. */
  calls: string[];
  /** Delay responses whose path starts with prefix; returns the release. */
  hold(prefix: string): () => void;
  restore(): void;
}

export function installFixtureFetch(): FixtureServer {
  const calls: string[] = [];
  const holds: Array<{ prefix: string; promise: Promise<void> }> = [];
  const original = globalThis.fetch;

  function hold(prefix: string): () => void {
    let release!: () => void;
    const entry = {
      prefix,
      promise: new Promise<void>((resolve) => {
        release = resolve;
      }),
    };
    holds.push(entry);
    return () => {
      const at = holds.indexOf(entry);
      if (at >= 0) holds.splice(at, 1);
      release();
    };
  }

  const fake = async (input: unknown) => {
    const path = String(input);
    calls.push(path);
    const waiting = holds.filter((entry) => path.startsWith(entry.prefix));
    for (const entry of waiting) await entry.promise;
    const { status, body } = route(path);
    return {
      ok: status >= 200 && status < 300,
      status,
      json: async () => body,
    };
  };

  globalThis.fetch = fake as unknown as typeof fetch;
  return {
    calls,
    hold,
    restore: () => {
      globalThis.fetch = original;
    },
  };
}
