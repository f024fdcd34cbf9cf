// Geometry for the arc diagram. Both panels use the same character
// scale: x positions come from spans in the shared normalized character
// sequence, which makes merge regions line up vertically across panels.

import type { ApiEdge, ApiToken, Span } from "./types.js";

export const CHAR_W = 34;
export const PAD_X = 16;
export const ARC_AREA_H = 150;
export const TOKEN_H = 26;
export const UPOS_H = 18;
export const PANEL_H = ARC_AREA_H + TOKEN_H + UPOS_H + 8;

export function charX(offset: number): number {
  return PAD_X + offset * CHAR_W;
}

export function spanMidX(span: Span): number {
  return charX((span[0] + span[1]) / 2);
}

export function panelWidth(textLength: number): number {
  return charX(Math.max(textLength, 1)) + PAD_X;
}

export interface ArcGeometry {
  dependent: number;
  head: number; // 0 = root
  deprel: string | null;
  x1: number; // dependent center
  x2: number; // head center (x1 for root arcs)
  height: number;
  isRoot: boolean;
}

export function arcHeight(x1: number, x2: number): number {
  const dist = Math.abs(x2 - x1);
  return Math.min(30 + dist * 0.35, ARC_AREA_H - 10);
}

/** One arc per edge; root edges become a vertical marker at the token. */
export function computeArcs(tokens: ApiToken[], edges: ApiEdge[]): ArcGeometry[] {
  const centers = new Map<number, number>();
  for (const tok of tokens) {
    centers.set(tok.id, spanMidX(tok.span));
  }
  const arcs: ArcGeometry[] = [];
  for (const edge of edges) {
    const x1 = centers.get(edge.dependent);
    if (x1 === undefined) continue; // dangling edges are never drawn
    if (edge.head === 0) {
      arcs.push({
        dependent: edge.dependent,
        head: 0,
        deprel: edge.deprel,
        x1,
        x2: x1,
        height: ARC_AREA_H - 6,
        isRoot: true,
      });
      continue;
    }
    const x2 = centers.get(edge.head);
    if (x2 === undefined) continue;
    arcs.push({
      dependent: edge.dependent,
      head: edge.head,
      deprel: edge.deprel,
      x1,
      x2,
      height: arcHeight(x1, x2),
      isRoot: false,
    });
  }
  return arcs;
}

/** SVG path for an arc between two token centers, drawn above the row. */
export function arcPath(x1: number, x2: number, height: number, baseY: number): string {
  if (x1 === x2) {
    return `M ${x1} ${baseY} L ${x2} ${baseY - height}`;
  }
  const cy = baseY - height;
  return `M ${x1} ${baseY} C ${x1} ${cy}, ${x2} ${cy}, ${x2} ${baseY}`;
}
