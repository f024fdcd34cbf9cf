// Pure SVG-markup builders for the parse panels and diff decorations.
// Keeping these string-level makes them testable without a DOM.

import {
  ARC_AREA_H,
  CHAR_W,
  PANEL_H,
  TOKEN_H,
  arcPath,
  charX,
  computeArcs,
  panelWidth,
} from "./layout.js";
import type { DiffEdge, DiffResponse, ParseResponse, Span } from "./types.js";

export type Side = "left" | "right";

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Character ranges shaded by the token-edits highlight mode. */
export function highlightRegions(diff: DiffResponse): Span[] {
  return diff.edits.filter((e) => e.kind !== "identical").map((e) => e.span);
}

/** Dependent spans whose edges disagree, keyed "start,end". */
export function disagreementSpanKeys(diff: DiffResponse): Set<string> {
  const keys = new Set<string>();
  for (const edge of diff.edges) {
    if (edge.agreement !== "both") {
      keys.add(edge.dependent_span.join(","));
    }
  }
  return keys;
}

export interface PanelDecorations {
  regions?: Span[];
  disagreementSpans?: Set<string>;
}

export function renderParsePanel(
  parse: ParseResponse,
  decorations: PanelDecorations = {},
): string {
  const width = panelWidth(parse.text.length);
  const baseY = ARC_AREA_H;
  const parts: string[] = [];
  parts.push(
    `<svg class="parse-panel" width="${width}" height="${PANEL_H}" ` +
      `viewBox="0 0 ${width} ${PANEL_H}" xmlns="http://www.w3.org/2000/svg">`,
  );

  for (const span of decorations.regions ?? []) {
    const x = charX(span[0]);
    const w = (span[1] - span[0]) * CHAR_W;
    parts.push(
      `<rect class="highlight-region" x="${x}" y="0" width="${w}" ` +
        `height="${PANEL_H}" data-span="${span[0]},${span[1]}"/>`,
    );
  }

  const arcs = computeArcs(parse.tokens, parse.edges);
  const disagreement = decorations.disagreementSpans;
  const spanByTokenId = new Map<number, Span>();
  for (const tok of parse.tokens) {
    spanByTokenId.set(tok.id, tok.span);
  }
  for (const arc of arcs) {
    const depSpan = spanByTokenId.get(arc.dependent);
    const disagrees =
      disagreement !== undefined &&
      depSpan !== undefined &&
      disagreement.has(depSpan.join(","));
    const classes = ["arc"];
    if (arc.isRoot) classes.push("arc-root");
    if (disagrees) classes.push("arc-disagree");
    parts.push(
      `<path class="${classes.join(" ")}" d="${arcPath(arc.x1, arc.x2, arc.height, baseY)}" ` +
        `data-dependent="${arc.dependent}" data-head="${arc.head}"/>`,
    );
    const labelX = arc.isRoot ? arc.x1 : (arc.x1 + arc.x2) / 2;
    const labelY = baseY - arc.height - 3;
    const label = arc.isRoot ? `root:${arc.deprel ?? "?"}` : arc.deprel ?? "?";
    parts.push(
      `<text class="deprel${disagrees ? " deprel-disagree" : ""}" ` +
        `x="${labelX}" y="${labelY}" text-anchor="middle">${esc(label)}</text>`,
    );
  }

  const tokenY = baseY + TOKEN_H - 8;
  const uposY = baseY + TOKEN_H + 10;
  for (const tok of parse.tokens) {
    const mid = charX((tok.span[0] + tok.span[1]) / 2);
    parts.push(
      `<text class="token-form" x="${mid}" y="${tokenY}" text-anchor="middle" ` +
        `data-id="${tok.id}">${esc(tok.form)}</text>`,
    );
    parts.push(
      `<text class="token-upos" x="${mid}" y="${uposY}" text-anchor="middle">` +
        `${esc(tok.upos ?? "_")}</text>`,
    );
  }

  parts.push("</svg>");
  return parts.join("");
}

export function renderEmptyPanel(message: string): string {
  return `<div class="panel-placeholder">${esc(message)}</div>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner">${esc(message)}</div>`;
}

export function renderSummary(diff: DiffResponse): string {
  const s = diff.summary;
  const edgeRows: DiffEdge[] = diff.edges.filter((e) => e.agreement !== "both");
  const pieces = [
    `tokens: ${s.identical} identical, ${s.merge} merge, ${s.split} split, ` +
      `${s.divergent} divergent`,
    `edges: ${s.agree_both} agree, ${s.agree_head_only} label differs, ` +
      `${s.agree_neither} head differs, ${s.incomparable} incomparable`,
  ];
  const detail = edgeRows
    .map(
      (e) =>
        `<li>[${e.dependent_span.join(",")}) ${esc(e.left_label ?? "?")} vs ` +
        `${esc(e.right_label ?? "?")} (${e.agreement})</li>`,
    )
    .join("");
  return (
    `<p>${pieces.join(" &middot; ")}</p>` +
    (detail ? `<ul class="edge-detail">${detail}</ul>` : "")
  );
}

/** Count of `class="arc ..."` elements in a rendered panel (test hook). */
export function countArcs(svg: string): number {
  return (svg.match(/class="arc[ "]/g) ?? []).length;
}
