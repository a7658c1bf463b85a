/** Deterministic, community-aware starting positions for the force layout.
 *
 * Each community gets an anchor on a ring around the canvas center and
 * every node starts near its community's anchor, offset by a hash of its
 * id. No randomness: the same document always lays out the same way, so
 * nodes begin visually clustered and screenshots are comparable.
 */

import type { NodeSummary } from "./types";

function hash01(value: number, salt: number): number {
  let h = Math.imul(value + 1, 2654435761) ^ Math.imul(salt + 1, 40503);
  h = Math.imul(h ^ (h >>> 15), 2246822519);
  h = (h ^ (h >>> 13)) >>> 0;
  return h / 4294967296;
}

export function initialPosition(
  node: NodeSummary,
  communityCount: number,
  width: number,
  height: number,
): { x: number; y: number } {
  const angle = (2 * Math.PI * node.community) / Math.max(1, communityCount);
  const ringX = width / 2 + Math.cos(angle) * width * 0.24;
  const ringY = height / 2 + Math.sin(angle) * height * 0.24;
  const jitterX = (hash01(node.id, 1) - 0.5) * width * 0.18;
  const jitterY = (hash01(node.id, 2) - 0.5) * height * 0.18;
  return { x: ringX + jitterX, y: ringY + jitterY };
}

/** Zoom level below which the full graph thins its weakest links. */
export const ZOOM_THIN_THRESHOLD = 1.2;
/** Fraction of strongest links still drawn when zoomed out. */
export const THINNED_LINK_FRACTION = 0.3;

export function visibleLinkFraction(zoomScale: number): number {
  return zoomScale >= ZOOM_THIN_THRESHOLD ? 1 : THINNED_LINK_FRACTION;
}
