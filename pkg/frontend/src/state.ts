// View state and its URL query-string codec. encode(decode(q)) and
// decode(encode(s)) are identities so views can be shared as links.

export type HighlightMode = "token-edits" | "edge-disagreements" | "off";

export interface ViewState {
  sent: number;
  left: string;
  right: string;
  highlight: HighlightMode;
}

export const DEFAULT_HIGHLIGHT: HighlightMode = "token-edits";

const HIGHLIGHT_MODES: HighlightMode[] = ["token-edits", "edge-disagreements", "off"];

export function encodeState(state: ViewState): string {
  const params = new URLSearchParams();
  params.set("sent", String(state.sent));
  params.set("left", state.left);
  params.set("right", state.right);
  params.set("highlight", state.highlight);
  return params.toString();
}

export function decodeState(
  query: string,
  defaults: { left: string; right: string },
): ViewState {
  const params = new URLSearchParams(query);
  const rawSent = params.get("sent");
  const sent = rawSent !== null && /^\d+$/.test(rawSent) ? parseInt(rawSent, 10) : 0;
  const rawHighlight = params.get("highlight");
  const highlight = HIGHLIGHT_MODES.includes(rawHighlight as HighlightMode)
    ? (rawHighlight as HighlightMode)
    : DEFAULT_HIGHLIGHT;
  return {
    sent,
    left: params.get("left") ?? defaults.left,
    right: params.get("right") ?? defaults.right,
    highlight,
  };
}

export function clampSent(state: ViewState, sentenceCount: number): ViewState {
  const max = Math.max(0, sentenceCount - 1);
  return { ...state, sent: Math.min(Math.max(state.sent, 0), max) };
}

/** Key used to discard stale async responses after the state moved on. */
export function stateKey(state: ViewState): string {
  return encodeState(state);
}
