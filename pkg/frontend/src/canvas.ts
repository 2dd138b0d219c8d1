// Canvas painting. The y-axis is flipped so bearings grow counterclockwise
// on screen, matching the engine's exports.

import type { DrawList } from "./renderer.js";
import type { Handshake } from "./protocol.js";

const BACKGROUND = "#101014";
const HUD_COLOR = "#d8d8e0";

export function paint(
    ctx: CanvasRenderingContext2D,
    draw: DrawList,
    handshake: Handshake | null,
): void {
    const { width, height } = ctx.canvas;
    ctx.setTransform(1, 0, 0, 1, 0, 0);
    ctx.fillStyle = BACKGROUND;
    ctx.fillRect(0, 0, width, height);

    const worldRadius = handshake
        ? handshake.boundary_radius * handshake.pixels_per_unit
        : 300;
    const scale = Math.min(width, height) / (2 * worldRadius * 1.08);
    ctx.setTransform(scale, 0, 0, -scale, width / 2, height / 2);
    ctx.lineWidth = 1.5 / scale;

    for (const path of draw.paths) {
        if (path.points.length === 0) continue;
        ctx.strokeStyle = path.color;
        ctx.beginPath();
        const first = path.points[0]!;
        ctx.moveTo(first[0], first[1]);
        for (let i = 1; i < path.points.length; i++) {
            const p = path.points[i]!;
            ctx.lineTo(p[0], p[1]);
        }
        if (path.closed) ctx.closePath();
        ctx.stroke();
    }

    ctx.setTransform(1, 0, 0, 1, 0, 0);
    ctx.fillStyle = HUD_COLOR;
    ctx.font = "14px monospace";
    draw.hud.forEach((line, i) => ctx.fillText(line, 12, 22 + 18 * i));
}
