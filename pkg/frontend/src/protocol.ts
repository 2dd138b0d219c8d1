// Client side of the "curved/1" wire protocol: newline-delimited JSON,
// engine-authoritative. The client never simulates; it parses what the
// engine sends and emits input lines.

export const PROTOCOL_VERSION = "curved/1";

export type PolylineWire = {
    id: string;
    style: string;
    closed: boolean;
    points: [number, number][];
};

export type Handshake = {
    type: "handshake";
    protocol: string;
    boundary_radius: number;
    pixels_per_unit: number;
    k_norm: number;
    controlled: string | null;
};

export type Frame = {
    type: "frame";
    time: number;
    k_norm: number;
    polylines: PolylineWire[];
};

export type ErrorMessage = {
    type: "error";
    code: string;
    message: string;
};

export type ServerMessage = Handshake | Frame | ErrorMessage;

export type InputAction =
    | "thrust"
    | "rotate"
    | "curvature_delta"
    | "curvature_set"
    | "pause"
    | "reset";

export type Input = { action: InputAction; value: number };

const INPUT_ACTIONS: ReadonlySet<string> = new Set([
    "thrust",
    "rotate",
    "curvature_delta",
    "curvature_set",
    "pause",
    "reset",
]);

function isFiniteNumber(x: unknown): x is number {
    return typeof x === "number" && Number.isFinite(x);
}

function isPoint(x: unknown): x is [number, number] {
    return Array.isArray(x) && x.length === 2 && isFiniteNumber(x[0]) && isFiniteNumber(x[1]);
}

function isPolyline(x: unknown): x is PolylineWire {
    if (typeof x !== "object" || x === null) return false;
    const p = x as Record<string, unknown>;
    return (
        typeof p.id === "string" &&
        typeof p.style === "string" &&
        typeof p.closed === "boolean" &&
        Array.isArray(p.points) &&
        p.points.every(isPoint)
    );
}

/** Parse one server line; null for anything malformed or unrecognized. */
export function parseServerLine(line: string): ServerMessage | null {
    let doc: unknown;
    try {
        doc = JSON.parse(line);
    } catch {
        return null;
    }
    if (typeof doc !== "object" || doc === null) return null;
    const msg = doc as Record<string, unknown>;
    if (msg.type === "frame") {
        if (
            isFiniteNumber(msg.time) &&
            isFiniteNumber(msg.k_norm) &&
            Array.isArray(msg.polylines) &&
            msg.polylines.every(isPolyline)
        ) {
            return {
                type: "frame",
                time: msg.time,
                k_norm: msg.k_norm,
                polylines: msg.polylines as PolylineWire[],
            };
        }
        return null;
    }
    if (msg.type === "handshake") {
        if (
            typeof msg.protocol === "string" &&
            isFiniteNumber(msg.boundary_radius) &&
            isFiniteNumber(msg.pixels_per_unit) &&
            isFiniteNumber(msg.k_norm)
        ) {
            return {
                type: "handshake",
                protocol: msg.protocol,
                boundary_radius: msg.boundary_radius,
                pixels_per_unit: msg.pixels_per_unit,
                k_norm: msg.k_norm,
                controlled: typeof msg.controlled === "string" ? msg.controlled : null,
            };
        }
        return null;
    }
    if (msg.type === "error") {
        if (typeof msg.code === "string" && typeof msg.message === "string") {
            return { type: "error", code: msg.code, message: msg.message };
        }
        return null;
    }
    return null;
}

/** One protocol line (no trailing newline; the transport adds it). */
export function encodeInput(input: Input): string {
    if (!INPUT_ACTIONS.has(input.action)) {
        throw new Error(`unknown input action: ${input.action}`);
    }
    if (!Number.isFinite(input.value)) {
        throw new Error("input value must be a finite number");
    }
    return JSON.stringify({ type: "input", action: input.action, value: input.value });
}
