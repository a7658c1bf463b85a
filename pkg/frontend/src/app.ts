/** Application wiring: three panels over the /api endpoints.
 *
 * All state lives in one ViewState value changed only through the pure
 * transitions in state.ts; every async response is guarded by a
 * SequenceGate so late responses can never overwrite newer ones.
 */

import type { ApiClient } from "./api";
import { GraphView } from "./graph";
import {
  clearSearchResults,
  renderDetail,
  renderSearchResults,
  renderTalkList,
} from "./panels";
import {
  SequenceGate,
  ViewState,
  hoverTalk,
  initialState,
  selectTalk,
  setSearch,
  showFullGraph,
} from "./state";
import type { NodeSummary } from "./types";

export interface AppOptions {
  /** Let the force simulation run on its own clock (default true). */
  autorunSimulation?: boolean;
  /** How to open a talk's stored page; defaults to window.open. */
  openExternal?: (url: string) => void;
}

export interface AppHandle {
  /** Resolves once the title list and the full graph have loaded. */
  ready: Promise<void>;
  state(): ViewState;
  graph: GraphView;
  root: HTMLElement;
}

export function createApp(
  root: HTMLElement,
  api: ApiClient,
  options: AppOptions = {},
): AppHandle {
  root.innerHTML = `
    <div class="layout">
      <aside class="panel left">
        <input class="search" type="search" placeholder="Search titles…" aria-label="search titles" />
        <ul class="search-results"></ul>
        <div class="list-header">
          <span>talks</span>
          <button type="button" class="show-all">show all</button>
        </div>
        <ul class="talk-list"></ul>
      </aside>
      <main class="panel center">
        <svg class="graph" role="img" aria-label="similarity network"></svg>
        <div class="tooltip" hidden></div>
      </main>
      <aside class="panel right">
        <div class="detail"><p class="placeholder">Hover a node or pick a talk.</p></div>
      </aside>
    </div>`;

  const searchInput = root.querySelector<HTMLInputElement>("input.search")!;
  const dropdown = root.querySelector<HTMLElement>("ul.search-results")!;
  const talkList = root.querySelector<HTMLElement>("ul.talk-list")!;
  const showAllButton = root.querySelector<HTMLButtonElement>("button.show-all")!;
  const svg = root.querySelector<SVGSVGElement>("svg.graph")!;
  const tooltip = root.querySelector<HTMLElement>("div.tooltip")!;
  const detailPanel = root.querySelector<HTMLElement>("div.detail")!;

  let state = initialState;
  const panelGate = new SequenceGate();
  const viewGate = new SequenceGate();
  const searchGate = new SequenceGate();
  const titles = new Map<number, string>();

  const openExternal =
    options.openExternal ??
    ((url: string) => {
      root.ownerDocument.defaultView?.open(url, "_blank", "noopener");
    });

  const graph = new GraphView(
    svg,
    {
      onHover: handleHover,
      onSelect: (id) => void enterNeighborView(id),
    },
    { autorun: options.autorunSimulation ?? true },
  );

  function handleHover(id: number | null): void {
    if (id === null) {
      tooltip.hidden = true;
    } else {
      tooltip.textContent = titles.get(id) ?? `talk ${id}`;
      tooltip.hidden = false;
    }
    const previous = state.shown;
    state = hoverTalk(state, id);
    if (state.shown !== null && state.shown !== previous) {
      void showDetail(state.shown);
    }
  }

  async function showDetail(id: number): Promise<void> {
    const token = panelGate.next();
    const detail = await api.talkDetail(id, 10);
    if (!panelGate.isCurrent(token)) return;
    renderDetail(detailPanel, detail, { onOpen: (recId) => void openTalk(recId) });
  }

  async function openTalk(id: number): Promise<void> {
    const detail = await api.talkDetail(id, 1);
    if (detail.meta.url) openExternal(detail.meta.url);
  }

  async function enterNeighborView(id: number): Promise<void> {
    state = selectTalk(state, id);
    const token = viewGate.next();
    const neighborhood = await api.neighbors(id, 10);
    if (viewGate.isCurrent(token)) graph.render(neighborhood);
    void showDetail(id);
  }

  async function restoreFullGraph(): Promise<void> {
    state = showFullGraph(state);
    const token = viewGate.next();
    const fullGraph = await api.graph();
    if (viewGate.isCurrent(token)) graph.render(fullGraph);
  }

  function pickSearchResult(id: number): void {
    clearSearchResults(dropdown);
    void enterNeighborView(id);
  }

  function handleSearchInput(): void {
    const text = searchInput.value;
    state = setSearch(state, text);
    if (text === "") {
      clearSearchResults(dropdown);
      void restoreFullGraph();
      return;
    }
    const token = searchGate.next();
    void api.search(text).then((results: NodeSummary[]) => {
      if (!searchGate.isCurrent(token)) return;
      renderSearchResults(dropdown, results, pickSearchResult);
    });
  }

  searchInput.addEventListener("input", handleSearchInput);
  showAllButton.addEventListener("click", () => void restoreFullGraph());

  async function loadTalkList(): Promise<void> {
    const talks = await api.talks();
    for (const talk of talks) titles.set(talk.id, talk.title);
    renderTalkList(talkList, talks, (id) => void enterNeighborView(id));
  }

  const ready = Promise.all([loadTalkList(), restoreFullGraph()]).then(() => undefined);

  return { ready, state: () => state, graph, root };
}
