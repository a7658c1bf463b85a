/** View state and its pure transitions.
 *
 * Every user interaction maps to one of these functions; the DOM is
 * re-rendered from (state, fetched data) only, which is what makes an
 * interaction script replayable.
 */

export type ViewMode = "full-graph" | "neighbor-view";

export interface ViewState {
  mode: ViewMode;
  /** Talk whose neighbor subgraph the center panel shows. */
  selected: number | null;
  /** Talk the right panel describes: the last node hovered or picked. */
  shown: number | null;
  search: string;
}

export const initialState: ViewState = {
  mode: "full-graph",
  selected: null,
  shown: null,
  search: "",
};

/** neighbor-view must always have a selected talk. */
export function isValid(state: ViewState): boolean {
  return state.mode === "full-graph" || state.selected !== null;
}

/** Entering neighbor view also points the right panel at the talk. */
export function selectTalk(state: ViewState, id: number): ViewState {
  return { ...state, mode: "neighbor-view", selected: id, shown: id };
}

export function showFullGraph(state: ViewState): ViewState {
  return { ...state, mode: "full-graph", selected: null };
}

/** Hover updates the right panel; unhover (null) keeps the last talk. */
export function hoverTalk(state: ViewState, id: number | null): ViewState {
  if (id === null) return state;
  return { ...state, shown: id };
}

/** Clearing the box restores the full graph; other edits only retype. */
export function setSearch(state: ViewState, text: string): ViewState {
  if (text === "") return { ...showFullGraph(state), search: "" };
  return { ...state, search: text };
}

/** Discards responses that arrive after a newer request was issued. */
export class SequenceGate {
  private sequence = 0;

  next(): number {
    return ++this.sequence;
  }

  isCurrent(token: number): boolean {
    return token === this.sequence;
  }
}
