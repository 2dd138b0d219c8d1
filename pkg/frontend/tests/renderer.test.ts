import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";
import { parseServerLine, type Frame } from "../src/protocol.js";
import { renderFrame, styleColor } from "../src/renderer.js";

type Expected = {
    time: number;
    k_norm: number;
    pathCount: number;
    firstPoint: [number, number];
    lastPoint: [number, number];
};

function fixture(name: string): string {
    return readFileSync(new URL(`../fixtures/${name}`, import.meta.url), "utf-8");
}

function recordedFrames(): Frame[] {
    const frames: Frame[] = [];
    for (const line of fixture("session.ndjson").split("\n")) {
        if (!line.trim()) continue;
        const msg = parseServerLine(line);
        expect(msg).not.toBeNull();
        if (msg!.type === "frame") frames.push(msg as Frame);
    }
    return frames;
}

describe("golden transcript", () => {
    const expected: Expected[] = JSON.parse(fixture("drawlists.json"));

    it("replays to the recorded draw lists", () => {
        const frames = recordedFrames();
        expect(frames).toHaveLength(expected.length);
        frames.forEach((frame, i) => {
            const want = expected[i]!;
            expect(frame.time).toBe(want.time);
            expect(frame.k_norm).toBe(want.k_norm);
            const draw = renderFrame(frame);
            expect(draw.paths).toHaveLength(want.pathCount);
            expect(draw.paths[0]!.points[0]).toEqual(want.firstPoint);
            const last = draw.paths[draw.paths.length - 1]!;
            expect(last.points[last.points.length - 1]).toEqual(want.lastPoint);
        });
    });

    it("is deterministic", () => {
        const frames = recordedFrames();
        const once = frames.map((f) => JSON.stringify(renderFrame(f)));
        const twice = frames.map((f) => JSON.stringify(renderFrame(f)));
        expect(once).toEqual(twice);
    });
});

describe("style colors", () => {
    it("fixed colors for chrome and the controlled body", () => {
        expect(styleColor("grid", "grid_x+0")).toBe("#4a4a55");
        expect(styleColor("boundary", "boundary")).toBe("#e8e8e8");
        expect(styleColor("controlled", "ship")).toBe("#ff4040");
    });

    it("object color is a stable function of the id", () => {
        expect(styleColor("object", "rock")).toBe(styleColor("object", "rock"));
    });

    it("one stroked path per polyline", () => {
        const frames = recordedFrames();
        for (const frame of frames) {
            expect(renderFrame(frame).paths).toHaveLength(frame.polylines.length);
        }
    });
});
