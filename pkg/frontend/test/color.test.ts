import { describe, expect, it } from "vitest";

import {
  MAX_RADIUS,
  MIN_RADIUS,
  NEGATIVE_COLOR,
  POSITIVE_COLOR,
  UNSCORED_COLOR,
  nodeRadius,
  sentimentColor,
} from "../src/color";
import {
  THINNED_LINK_FRACTION,
  ZOOM_THIN_THRESHOLD,
  initialPosition,
  visibleLinkFraction,
} from "../src/layout";
import { MAX_FONT_PX, MIN_FONT_PX, cloudFontSize } from "../src/wordcloud";
import type { NodeSummary } from "../src/types";

function channels(color: string): number[] {
  const match = color.match(/^rgb\((\d+), (\d+), (\d+)\)$/);
  expect(match, `parse ${color}`).not.toBeNull();
  return match!.slice(1).map(Number);
}

describe("sentimentColor", () => {
  it("maps the extremes to the published endpoint colors", () => {
    expect(sentimentColor(0)).toBe(NEGATIVE_COLOR);
    expect(sentimentColor(1)).toBe(POSITIVE_COLOR);
  });

  it("maps unscored talks to gray", () => {
    expect(sentimentColor(null)).toBe(UNSCORED_COLOR);
    expect(sentimentColor(Number.NaN)).toBe(UNSCORED_COLOR);
  });

  it("clamps out-of-range values to the endpoints", () => {
    expect(sentimentColor(-0.4)).toBe(NEGATIVE_COLOR);
    expect(sentimentColor(1.7)).toBe(POSITIVE_COLOR);
  });

  it("moves monotonically from blue to red", () => {
    const stops = [0, 0.25, 0.5, 0.75, 1].map((t) => channels(sentimentColor(t)));
    for (let i = 1; i < stops.length; i += 1) {
      expect(stops[i]![0]).toBeGreaterThan(stops[i - 1]![0]!); // red rises
      expect(stops[i]![1]).toBeLessThan(stops[i - 1]![1]!); // green falls
      expect(stops[i]![2]).toBeLessThan(stops[i - 1]![2]!); // blue falls
    }
  });
});

describe("nodeRadius", () => {
  it("gives equal views equal radii", () => {
    expect(nodeRadius(5000, 10000)).toBe(nodeRadius(5000, 10000));
  });

  it("spans exactly MIN..MAX over 0..max views", () => {
    expect(nodeRadius(0, 10000)).toBe(MIN_RADIUS);
    expect(nodeRadius(10000, 10000)).toBe(MAX_RADIUS);
  });

  it("grows with sqrt: a quarter of max views sits at the midpoint", () => {
    expect(nodeRadius(2500, 10000)).toBeCloseTo((MIN_RADIUS + MAX_RADIUS) / 2, 12);
  });

  it("degrades to the minimum when there are no views at all", () => {
    expect(nodeRadius(0, 0)).toBe(MIN_RADIUS);
  });

  it("is monotone in views", () => {
    let previous = -Infinity;
    for (const views of [0, 10, 500, 2500, 9999, 10000]) {
      const radius = nodeRadius(views, 10000);
      expect(radius).toBeGreaterThanOrEqual(previous);
      previous = radius;
    }
  });
});

describe("cloudFontSize", () => {
  it("spans MIN..MAX font sizes over the weight range", () => {
    expect(cloudFontSize(0, 5)).toBe(MIN_FONT_PX);
    expect(cloudFontSize(5, 5)).toBe(MAX_FONT_PX);
    expect(cloudFontSize(2.5, 5)).toBeCloseTo((MIN_FONT_PX + MAX_FONT_PX) / 2, 12);
  });

  it("handles an all-zero cloud", () => {
    expect(cloudFontSize(0, 0)).toBe(MIN_FONT_PX);
  });
});

describe("initialPosition", () => {
  const node = (id: number, community: number): NodeSummary => ({
    id,
    title: `talk ${id}`,
    speaker: "s",
    views: 1,
    sentiment_norm: 0.5,
    community,
  });

  it("is deterministic", () => {
    const a = initialPosition(node(7, 1), 3, 900, 700);
    const b = initialPosition(node(7, 1), 3, 900, 700);
    expect(a).toEqual(b);
  });

  it("scatters distinct ids within a community", () => {
    const a = initialPosition(node(1, 0), 3, 900, 700);
    const b = initialPosition(node(2, 0), 3, 900, 700);
    expect(a).not.toEqual(b);
  });

  it("keeps every start position on the canvas", () => {
    for (let id = 0; id < 200; id += 1) {
      const { x, y } = initialPosition(node(id, id % 5), 5, 900, 700);
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThanOrEqual(900);
      expect(y).toBeGreaterThanOrEqual(0);
      expect(y).toBeLessThanOrEqual(700);
    }
  });

  it("pulls same-community nodes toward a shared anchor", () => {
    const spread = (ids: number[], community: number[]): number => {
      const points = ids.map((id, i) =>
        initialPosition(node(id, community[i]!), 2, 900, 700),
      );
      const cx = points.reduce((sum, p) => sum + p.x, 0) / points.length;
      const cy = points.reduce((sum, p) => sum + p.y, 0) / points.length;
      return (
        points.reduce(
          (sum, p) => sum + Math.hypot(p.x - cx, p.y - cy),
          0,
        ) / points.length
      );
    };
    const ids = [0, 1, 2, 3, 4, 5, 6, 7];
    const sameCommunity = spread(ids, ids.map(() => 0));
    const splitCommunities = spread(ids, ids.map((i) => i % 2));
    expect(sameCommunity).toBeLessThan(splitCommunities);
  });
});

describe("visibleLinkFraction", () => {
  it("thins links only below the zoom threshold", () => {
    expect(visibleLinkFraction(ZOOM_THIN_THRESHOLD - 0.01)).toBe(THINNED_LINK_FRACTION);
    expect(visibleLinkFraction(ZOOM_THIN_THRESHOLD)).toBe(1);
    expect(visibleLinkFraction(4)).toBe(1);
  });
});
