import { describe, expect, it } from "vitest";

import {
  DEFAULT_HIGHLIGHT,
  ViewState,
  clampSent,
  decodeState,
  encodeState,
} from "../src/state.js";

const DEFAULTS = { left: "gsd", right: "ltp" };

describe("view state url codec", () => {
  it("round-trips every state exactly", () => {
    const states: ViewState[] = [];
    for (const sent of [0, 3, 17, 9999]) {
      for (const left of ["gsd", "ltp", "pku"]) {
        for (const right of ["gsd", "ctb"]) {
          for (const highlight of ["token-edits", "edge-disagreements", "off"] as const) {
            states.push({ sent, left, right, highlight });
          }
        }
      }
    }
    for (const state of states) {
      expect(decodeState(encodeState(state), DEFAULTS)).toEqual(state);
    }
  });

  it("restores the documented example url", () => {
    const state = decodeState("?sent=3&left=gsd&right=pku", DEFAULTS);
    expect(state).toEqual({
      sent: 3,
      left: "gsd",
      right: "pku",
      highlight: DEFAULT_HIGHLIGHT,
    });
  });

  it("falls back to defaults on missing or garbage params", () => {
    expect(decodeState("", DEFAULTS)).toEqual({
      sent: 0,
      left: "gsd",
      right: "ltp",
      highlight: DEFAULT_HIGHLIGHT,
    });
    const garbage = decodeState("?sent=-4x&highlight=rainbow", DEFAULTS);
    expect(garbage.sent).toBe(0);
    expect(garbage.highlight).toBe(DEFAULT_HIGHLIGHT);
  });

  it("clamps the sentence index to the catalog bounds", () => {
    const state: ViewState = { sent: 50, left: "a", right: "b", highlight: "off" };
    expect(clampSent(state, 22).sent).toBe(21);
    expect(clampSent({ ...state, sent: -2 }, 22).sent).toBe(0);
    expect(clampSent(state, 0).sent).toBe(0);
  });
});
