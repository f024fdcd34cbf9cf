// Wires the controls, the two arc-diagram panels, and the diff overlay
// to the service. Parse responses are cached per (scheme, sentence), so
// changing one scheme re-fetches only that panel plus the diff.

import { ApiClient, ApiError } from "./api.js";
import {
  disagreementSpanKeys,
  highlightRegions,
  renderErrorBanner,
  renderParsePanel,
  renderSummary,
} from "./render.js";
import {
  DEFAULT_HIGHLIGHT,
  HighlightMode,
  ViewState,
  clampSent,
  decodeState,
  encodeState,
  stateKey,
} from "./state.js";
import type { DiffResponse, ParseResponse } from "./types.js";

const api = new ApiClient();
const parseCache = new Map<string, ParseResponse>();

let state: ViewState = { sent: 0, left: "", right: "", highlight: DEFAULT_HIGHLIGHT };
let sentenceCount = 0;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function cachedParse(scheme: string, sent: number): Promise<ParseResponse> {
  const key = `${scheme}:${sent}`;
  const hit = parseCache.get(key);
  if (hit) return hit;
  const parse = await api.parse(scheme, sent);
  parseCache.set(key, parse);
  return parse;
}

function syncControls(): void {
  el<HTMLHeadingElement>("left-title").textContent = state.left;
  el<HTMLHeadingElement>("right-title").textContent = state.right;
  el<HTMLSelectElement>("left-scheme").value = state.left;
  el<HTMLSelectElement>("right-scheme").value = state.right;
  el<HTMLSelectElement>("highlight-mode").value = state.highlight;
  el<HTMLInputElement>("sent-index").value = String(state.sent);
  el<HTMLButtonElement>("prev-sent").disabled = state.sent <= 0;
  el<HTMLButtonElement>("next-sent").disabled = state.sent >= sentenceCount - 1;
  el<HTMLSpanElement>("sent-total").textContent = `/ ${sentenceCount}`;
}

function pushUrl(): void {
  history.replaceState(null, "", `?${encodeState(state)}`);
}

async function refresh(): Promise<void> {
  const key = stateKey(state);
  syncControls();
  pushUrl();
  const leftPanel = el<HTMLDivElement>("left-panel");
  const rightPanel = el<HTMLDivElement>("right-panel");
  const summary = el<HTMLDivElement>("summary");

  try {
    const [leftParse, rightParse] = await Promise.all([
      cachedParse(state.left, state.sent),
      cachedParse(state.right, state.sent),
    ]);
    let diff: DiffResponse | null = null;
    if (state.left !== state.right || state.highlight !== "off") {
      diff = await api.diff(state.left, state.right, state.sent);
    }
    if (stateKey(state) !== key) return; // stale response, a newer view won

    const regions =
      diff && state.highlight === "token-edits" ? highlightRegions(diff) : [];
    const disagreements =
      diff && state.highlight === "edge-disagreements"
        ? disagreementSpanKeys(diff)
        : undefined;
    leftPanel.innerHTML = renderParsePanel(leftParse, {
      regions,
      disagreementSpans: disagreements,
    });
    rightPanel.innerHTML = renderParsePanel(rightParse, {
      regions,
      disagreementSpans: disagreements,
    });
    summary.innerHTML = diff
      ? renderSummary(diff)
      : "<p>highlighting off</p>";
    el<HTMLDivElement>("sentence-text").textContent = leftParse.text;
  } catch (err) {
    if (stateKey(state) !== key) return;
    const message =
      err instanceof ApiError ? `${err.status}: ${err.message}` : String(err);
    leftPanel.innerHTML = renderErrorBanner(message);
    rightPanel.innerHTML = renderErrorBanner(message);
    summary.innerHTML = "";
  }
}

function setState(next: ViewState): void {
  state = clampSent(next, sentenceCount);
  void refresh();
}

async function init(): Promise<void> {
  const schemes = await api.schemes();
  sentenceCount = schemes.sentence_count;
  const ids = schemes.schemes.map((s) => s.id);
  for (const selectId of ["left-scheme", "right-scheme"]) {
    const select = el<HTMLSelectElement>(selectId);
    select.innerHTML = ids
      .map((id) => `<option value="${id}">${id}</option>`)
      .join("");
  }
  const defaults = { left: ids[0] ?? "", right: ids[1] ?? ids[0] ?? "" };
  state = clampSent(decodeState(location.search, defaults), sentenceCount);

  el<HTMLSelectElement>("left-scheme").addEventListener("change", (e) =>
    setState({ ...state, left: (e.target as HTMLSelectElement).value }),
  );
  el<HTMLSelectElement>("right-scheme").addEventListener("change", (e) =>
    setState({ ...state, right: (e.target as HTMLSelectElement).value }),
  );
  el<HTMLSelectElement>("highlight-mode").addEventListener("change", (e) =>
    setState({
      ...state,
      highlight: (e.target as HTMLSelectElement).value as HighlightMode,
    }),
  );
  el<HTMLButtonElement>("prev-sent").addEventListener("click", () =>
    setState({ ...state, sent: state.sent - 1 }),
  );
  el<HTMLButtonElement>("next-sent").addEventListener("click", () =>
    setState({ ...state, sent: state.sent + 1 }),
  );
  el<HTMLInputElement>("sent-index").addEventListener("change", (e) => {
    const value = parseInt((e.target as HTMLInputElement).value, 10);
    setState({ ...state, sent: Number.isNaN(value) ? 0 : value });
  });

  await refresh();
}

void init();
