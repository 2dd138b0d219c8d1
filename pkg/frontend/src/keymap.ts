// Keyboard bindings. Each mapped key event turns into exactly one input;
// everything else returns null. Holding the curvature keys repeats via
// the viewer's per-frame pump (see viewer.ts), not here.

import type { Input } from "./protocol.js";

export type KeyEvent = {
    type: "keydown" | "keyup";
    key: string;
};

export const CURVATURE_STEP = 0.01;

export function keymap(event: KeyEvent): Input | null {
    const { type, key } = event;
    if (type === "keydown") {
        switch (key) {
            case "ArrowUp":
                return { action: "thrust", value: 1.0 };
            case "ArrowLeft":
                return { action: "rotate", value: -1.0 };
            case "ArrowRight":
                return { action: "rotate", value: 1.0 };
            case "+":
            case "=":
                return { action: "curvature_delta", value: CURVATURE_STEP };
            case "-":
                return { action: "curvature_delta", value: -CURVATURE_STEP };
            case "1":
                return { action: "curvature_set", value: -1.0 };
            case "2":
                return { action: "curvature_set", value: 0.0 };
            case "3":
                return { action: "curvature_set", value: 1.0 };
            case " ":
                return { action: "pause", value: 0.0 };
            case "r":
            case "R":
                return { action: "reset", value: 0.0 };
            default:
                return null;
        }
    }
    // releases stop the continuous controls
    switch (key) {
        case "ArrowUp":
            return { action: "thrust", value: 0.0 };
        case "ArrowLeft":
        case "ArrowRight":
            return { action: "rotate", value: 0.0 };
        default:
            return null;
    }
}
