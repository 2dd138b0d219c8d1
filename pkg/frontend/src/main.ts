// Browser bootstrap: connect to the bridge, draw frames, forward keys.

import { encodeInput } from "./protocol.js";
import { keymap } from "./keymap.js";
import { applyServerLine, heldInputs, initialState } from "./viewer.js";
import { paint } from "./canvas.js";

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const status = document.getElementById("status")!;

const state = initialState();
const socket = new WebSocket(`ws://${location.host}/ws`);

function send(line: string): void {
    if (socket.readyState === WebSocket.OPEN) {
        socket.send(line);
    }
}

socket.onopen = () => {
    state.connection = "open";
    status.textContent = "connected";
    // each side opens with a handshake line
    socket.send(JSON.stringify({ type: "handshake", protocol: "curved/1" }));
};

socket.onclose = () => {
    state.connection = "closed";
    status.textContent = "disconnected";
};

socket.onmessage = (event) => {
    const draw = applyServerLine(state, String(event.data), performance.now());
    if (draw) {
        for (const input of heldInputs(state)) {
            send(encodeInput(input));
        }
        paint(ctx, draw, state.handshake);
    }
};

window.addEventListener("keydown", (event) => {
    if (event.repeat) return;
    state.keysHeld.add(event.key);
    const input = keymap({ type: "keydown", key: event.key });
    if (input) {
        send(encodeInput(input));
        event.preventDefault();
    }
});

window.addEventListener("keyup", (event) => {
    state.keysHeld.delete(event.key);
    const input = keymap({ type: "keyup", key: event.key });
    if (input) {
        send(encodeInput(input));
        event.preventDefault();
    }
});
