/** Node encodings: sentiment -> color, views -> radius. */

import { interpolateRgb } from "d3";

/** Blue end of the scale: most negative sentiment (normalized 0). */
export const NEGATIVE_COLOR = "rgb(33, 102, 172)";
/** Red end of the scale: most positive sentiment (normalized 1). */
export const POSITIVE_COLOR = "rgb(178, 24, 43)";
/** Talks with no scored words. */
export const UNSCORED_COLOR = "rgb(158, 158, 158)";

const ramp = interpolateRgb(NEGATIVE_COLOR, POSITIVE_COLOR);

export function sentimentColor(normalized: number | null): string {
  if (normalized === null || Number.isNaN(normalized)) return UNSCORED_COLOR;
  return ramp(Math.min(1, Math.max(0, normalized)));
}

export const MIN_RADIUS = 4;
export const MAX_RADIUS = 18;

/** Radius grows with the square root of views, clamped to stay legible. */
export function nodeRadius(views: number, maxViews: number): number {
  if (maxViews <= 0) return MIN_RADIUS;
  const t = Math.sqrt(Math.max(0, views) / maxViews);
  return MIN_RADIUS + (MAX_RADIUS - MIN_RADIUS) * Math.min(1, t);
}
