/** Left (title list + search results) and right (talk detail) panels. */

import { sentimentColor } from "./color";
import type { NodeSummary, TalkDetail } from "./types";
import { renderWordCloud } from "./wordcloud";

export function renderTalkList(
  list: HTMLElement,
  talks: NodeSummary[],
  onPick: (id: number) => void,
): void {
  list.textContent = "";
  for (const talk of talks) {
    const item = list.ownerDocument.createElement("li");
    const button = list.ownerDocument.createElement("button");
    button.type = "button";
    button.className = "talk-title";
    button.textContent = talk.title;
    button.dataset.id = String(talk.id);
    button.addEventListener("click", () => onPick(talk.id));
    item.appendChild(button);
    list.appendChild(item);
  }
}

export function renderSearchResults(
  dropdown: HTMLElement,
  results: NodeSummary[],
  onPick: (id: number) => void,
): void {
  dropdown.textContent = "";
  dropdown.classList.toggle("open", results.length > 0);
  for (const talk of results) {
    const item = dropdown.ownerDocument.createElement("li");
    const button = dropdown.ownerDocument.createElement("button");
    button.type = "button";
    button.className = "search-hit";
    button.textContent = talk.title;
    button.dataset.id = String(talk.id);
    button.addEventListener("click", () => onPick(talk.id));
    item.appendChild(button);
    dropdown.appendChild(item);
  }
}

export function clearSearchResults(dropdown: HTMLElement): void {
  dropdown.textContent = "";
  dropdown.classList.remove("open");
}

export interface DetailCallbacks {
  /** Open a talk's stored page in a new browsing context. */
  onOpen(id: number): void;
}

export function renderDetail(
  panel: HTMLElement,
  detail: TalkDetail,
  callbacks: DetailCallbacks,
): void {
  const doc = panel.ownerDocument;
  panel.textContent = "";

  const heading = doc.createElement("h2");
  const anchor = doc.createElement("a");
  anchor.className = "detail-title";
  anchor.textContent = detail.meta.title;
  if (detail.meta.url) {
    anchor.href = detail.meta.url;
    anchor.target = "_blank";
    anchor.rel = "noopener";
  } else {
    anchor.setAttribute("aria-disabled", "true");
  }
  heading.appendChild(anchor);
  panel.appendChild(heading);

  const byline = doc.createElement("p");
  byline.className = "detail-byline";
  byline.textContent = `${detail.meta.speaker} · ${detail.meta.views.toLocaleString()} views`;
  panel.appendChild(byline);

  const sentiment = doc.createElement("p");
  sentiment.className = "detail-sentiment";
  if (detail.sentiment.score !== null) {
    sentiment.textContent = `sentiment ${detail.sentiment.score.toFixed(2)}`;
    sentiment.style.color = sentimentColor(detail.sentiment.normalized);
  } else {
    sentiment.textContent = "sentiment n/a";
  }
  panel.appendChild(sentiment);

  const cloud = doc.createElement("div");
  cloud.className = "wordcloud";
  renderWordCloud(cloud, detail.wordcloud);
  panel.appendChild(cloud);

  const listHeading = doc.createElement("h3");
  listHeading.textContent = "similar talks";
  panel.appendChild(listHeading);

  const list = doc.createElement("ol");
  list.className = "recommendations";
  for (const rec of detail.recommendations) {
    const item = doc.createElement("li");
    const button = doc.createElement("button");
    button.type = "button";
    button.className = "rec-title";
    button.dataset.id = String(rec.id);
    button.textContent = rec.title;
    button.addEventListener("click", () => callbacks.onOpen(rec.id));
    const score = doc.createElement("span");
    score.className = "rec-score";
    score.textContent = rec.similarity.toFixed(3);
    item.appendChild(button);
    item.appendChild(score);
    list.appendChild(item);
  }
  panel.appendChild(list);
}
