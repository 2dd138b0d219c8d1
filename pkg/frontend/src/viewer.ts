// Viewer state machine, kept free of DOM and sockets so it is testable.
// The client draws only what it received in frames; the single piece of
// client-side behavior beyond drawing is the curvature pump, which
// re-emits the held +/- keys once per received frame.

import type { Frame, Handshake, Input } from "./protocol.js";
import { parseServerLine } from "./protocol.js";
import type { DrawList } from "./renderer.js";
import { renderFrame } from "./renderer.js";
import { CURVATURE_STEP } from "./keymap.js";

export type ViewerState = {
    connection: "connecting" | "open" | "closed";
    handshake: Handshake | null;
    frame: Frame | null;
    framesSeen: number;
    errors: number;
    fps: number;
    lastFrameAt: number | null;
    keysHeld: Set<string>;
};

export function initialState(): ViewerState {
    return {
        connection: "connecting",
        handshake: null,
        frame: null,
        framesSeen: 0,
        errors: 0,
        fps: 0,
        lastFrameAt: null,
        keysHeld: new Set(),
    };
}

/** Apply one server line; returns the draw list when a frame arrived. */
export function applyServerLine(
    state: ViewerState,
    line: string,
    nowMs: number,
): DrawList | null {
    const msg = parseServerLine(line);
    if (msg === null) {
        state.errors += 1;
        return null;
    }
    if (msg.type === "handshake") {
        state.handshake = msg;
        return null;
    }
    if (msg.type === "error") {
        state.errors += 1;
        return null;
    }
    state.frame = msg;
    state.framesSeen += 1;
    if (state.lastFrameAt !== null) {
        const dt = (nowMs - state.lastFrameAt) / 1000;
        if (dt > 0) {
            const instant = 1 / dt;
            state.fps = state.fps === 0 ? instant : 0.9 * state.fps + 0.1 * instant;
        }
    }
    state.lastFrameAt = nowMs;
    const draw = renderFrame(msg);
    draw.hud.push(`${state.fps.toFixed(0)} fps`);
    if (state.errors > 0) {
        draw.hud.push(`${state.errors} errors`);
    }
    return draw;
}

/** Inputs to re-send this frame for keys that auto-repeat while held. */
export function heldInputs(state: ViewerState): Input[] {
    const out: Input[] = [];
    if (state.keysHeld.has("+") || state.keysHeld.has("=")) {
        out.push({ action: "curvature_delta", value: CURVATURE_STEP });
    }
    if (state.keysHeld.has("-")) {
        out.push({ action: "curvature_delta", value: -CURVATURE_STEP });
    }
    return out;
}
