// Pure frame-to-drawlist translation. No geometry happens here: every
// point was computed engine-side; this module only assigns colors and
// formats the HUD, so identical frames always produce identical draw
// lists.

import type { Frame } from "./protocol.js";

export type DrawPath = {
    color: string;
    closed: boolean;
    points: [number, number][];
};

export type DrawList = {
    paths: DrawPath[];
    hud: string[];
};

const GRID_COLOR = "#4a4a55";
const BOUNDARY_COLOR = "#e8e8e8";
const CONTROLLED_COLOR = "#ff4040";

// plain objects get a stable per-id color
const OBJECT_PALETTE = [
    "#5fb8ff",
    "#7ee787",
    "#ffa657",
    "#d2a8ff",
    "#79c0ff",
    "#f2cc60",
];

function stableHash(text: string): number {
    let h = 0;
    for (let i = 0; i < text.length; i++) {
        h = (h * 31 + text.charCodeAt(i)) >>> 0;
    }
    return h;
}

export function styleColor(style: string, id: string): string {
    switch (style) {
        case "grid":
            return GRID_COLOR;
        case "boundary":
            return BOUNDARY_COLOR;
        case "controlled":
            return CONTROLLED_COLOR;
        default:
            return OBJECT_PALETTE[stableHash(id) % OBJECT_PALETTE.length]!;
    }
}

export function renderFrame(frame: Frame): DrawList {
    const paths: DrawPath[] = frame.polylines.map((poly) => ({
        color: styleColor(poly.style, poly.id),
        closed: poly.closed,
        points: poly.points,
    }));
    return {
        paths,
        hud: [`K = ${frame.k_norm.toFixed(2)}`, `t = ${frame.time.toFixed(2)}s`],
    };
}
