/** Right-panel word cloud: font size proportional to TF-IDF weight. */

import type { CloudEntry } from "./types";

export const MAX_CLOUD_TERMS = 30;
export const MIN_FONT_PX = 11;
export const MAX_FONT_PX = 28;

export function cloudFontSize(weight: number, maxWeight: number): number {
  if (maxWeight <= 0) return MIN_FONT_PX;
  const t = Math.min(1, Math.max(0, weight / maxWeight));
  return MIN_FONT_PX + (MAX_FONT_PX - MIN_FONT_PX) * t;
}

export function renderWordCloud(container: HTMLElement, entries: CloudEntry[]): void {
  container.textContent = "";
  const shown = entries.slice(0, MAX_CLOUD_TERMS);
  const maxWeight = shown.reduce((top, entry) => Math.max(top, entry.weight), 0);
  for (const entry of shown) {
    const span = container.ownerDocument.createElement("span");
    span.className = "cloud-word";
    span.textContent = entry.word;
    span.style.fontSize = `${cloudFontSize(entry.weight, maxWeight).toFixed(1)}px`;
    span.title = entry.weight.toPrecision(3);
    container.appendChild(span);
  }
}
